#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "factorix/perm.hpp"

namespace factorix {

/// Index of a group element inside its GroupTable. Index 0 is the identity.
using Elem = std::uint16_t;

inline constexpr std::size_t kDefaultOrderCap = 10000;
inline constexpr std::size_t kFullTableLimit = 4096;

/// A fully enumerated finite group.
///
/// Permutation groups keep their elements sorted by image array, which
/// puts the identity at index 0 and makes every index reproducible from the
/// generators alone. Abstract tables (quotients) carry no permutations.
/// Immutable after construction, so safe to share across threads.
class GroupTable {
public:
  /// Closure of `generators` under composition. `degree` may be 0 when at
  /// least one generator is given.
  static GroupTable generate(std::span<const Perm> generators, int degree = 0,
                             std::size_t cap = kDefaultOrderCap);

  /// Abstract group from a row-major Cayley table with identity at index 0.
  static GroupTable from_cayley(std::vector<Elem> table, std::size_t order);

  /// The subgroup on `members` (sorted, identity first) with indices
  /// renumbered in member order. Keeps permutations when the parent has
  /// them, so the result matches `generate` on the same generators.
  static GroupTable restrict_to(const GroupTable &parent, std::span<const Elem> members,
                                std::vector<Perm> generators);

  std::size_t order() const noexcept { return order_; }
  int degree() const noexcept { return degree_; }
  bool has_permutations() const noexcept { return !elements_.empty(); }

  Elem identity() const noexcept { return 0; }
  Elem mul(Elem a, Elem b) const {
    if (!table_.empty())
      return table_[static_cast<std::size_t>(a) * order_ + b];
    return mul_slow(a, b);
  }
  Elem inv(Elem a) const noexcept { return inv_[a]; }
  int element_order(Elem a) const noexcept { return order_of_[a]; }

  const Perm &element(Elem a) const { return elements_.at(a); }
  std::span<const Perm> elements() const noexcept { return elements_; }
  const std::vector<Perm> &generators() const noexcept { return generators_; }

  std::optional<Elem> find(const Perm &p) const;
  /// Like find, but throws ElementNotInGroup.
  Elem index_of(const Perm &p) const;

  /// Conjugate x^-1 a x.
  Elem conjugate(Elem a, Elem x) const { return mul(mul(inv(x), a), x); }

private:
  GroupTable() = default;
  Elem mul_slow(Elem a, Elem b) const;
  void fill_tables();

  std::size_t order_ = 0;
  int degree_ = 0;
  std::vector<Perm> elements_;
  std::vector<std::uint64_t> keys_;
  std::vector<Perm> generators_;
  std::vector<Elem> table_;
  std::vector<Elem> inv_;
  std::vector<int> order_of_;
};

using GroupPtr = std::shared_ptr<const GroupTable>;

GroupPtr generate_group(std::span<const Perm> generators, int degree = 0,
                        std::size_t cap = kDefaultOrderCap);

/// Least m >= 1 with x^m = identity.
int element_order(Elem x, const GroupTable &g);

} // namespace factorix
