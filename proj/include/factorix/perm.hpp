#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace factorix {

inline constexpr int kMaxDegree = 16;

/// A bijection of {1..degree}, stored as a 0-based image array.
///
/// Products are read left to right: `compose(p, q)` applies p first and
/// then q, so a written product a1 a2 ... ak acts as "a1, then a2, ...".
class Perm {
public:
  Perm() = default;
  explicit Perm(int degree);

  /// Builds a permutation from 1-based images; throws on non-bijections.
  static Perm from_images(std::span<const int> images);

  /// Parses disjoint or overlapping cycle notation such as "(1,2,3)(4,5)"
  /// or "()". Overlapping cycles are multiplied left to right.
  static Perm parse(std::string_view text, int degree);

  /// Largest point mentioned in cycle notation (0 for "()").
  static int max_point(std::string_view text);

  int degree() const noexcept { return degree_; }

  /// Image of a 1-based point.
  int operator()(int point) const noexcept { return images_[point - 1] + 1; }

  bool is_identity() const noexcept;
  Perm inverse() const;

  /// Canonical cycle string: each cycle starts at its smallest point,
  /// cycles ordered by smallest point, identity written "()".
  std::string to_cycles() const;

  /// Packs the images four bits apiece with point 1 in the top nibble, so
  /// that keys of equal-degree permutations order lexicographically.
  std::uint64_t key() const noexcept;

  friend bool operator==(const Perm &, const Perm &) = default;
  friend std::strong_ordering operator<=>(const Perm &a, const Perm &b) {
    if (auto c = a.degree_ <=> b.degree_; c != 0)
      return c;
    return a.images_ <=> b.images_;
  }

  friend Perm compose(const Perm &p, const Perm &q);

private:
  std::uint8_t degree_ = 0;
  std::array<std::uint8_t, kMaxDegree> images_{};
};

/// Maps i to q(p(i)). Throws DegreeMismatch on unequal degrees.
Perm compose(const Perm &p, const Perm &q);

} // namespace factorix
