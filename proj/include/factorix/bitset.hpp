#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace factorix {

/// Fixed-length dynamic bitset tuned for the scatter/intersect loops of the
/// factorization searches.
class Bitset {
public:
  Bitset() = default;
  explicit Bitset(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  std::size_t size() const noexcept { return size_; }

  bool test(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i) noexcept { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) noexcept { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  /// Sets bit i and reports whether it was already set.
  bool test_and_set(std::size_t i) noexcept {
    std::uint64_t &w = words_[i >> 6];
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    const bool was = (w & mask) != 0;
    w |= mask;
    return was;
  }

  void clear() noexcept {
    for (auto &w : words_)
      w = 0;
  }

  void set_all() noexcept {
    for (auto &w : words_)
      w = ~std::uint64_t{0};
    trim();
  }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (auto w : words_)
      c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  bool none() const noexcept {
    for (auto w : words_)
      if (w)
        return false;
    return true;
  }

  /// |this ∩ o|
  std::size_t count_and(const Bitset &o) const noexcept {
    std::size_t c = 0;
    for (std::size_t i = 0; i < words_.size(); ++i)
      c += static_cast<std::size_t>(std::popcount(words_[i] & o.words_[i]));
    return c;
  }

  bool intersects(const Bitset &o) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i])
        return true;
    return false;
  }

  Bitset &operator|=(const Bitset &o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i)
      words_[i] |= o.words_[i];
    return *this;
  }
  Bitset &operator&=(const Bitset &o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i)
      words_[i] &= o.words_[i];
    return *this;
  }
  /// Removes every bit set in o.
  Bitset &subtract(const Bitset &o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i)
      words_[i] &= ~o.words_[i];
    return *this;
  }
  void flip() noexcept {
    for (auto &w : words_)
      w = ~w;
    trim();
  }

  /// Index of the first set bit at or after `from`, or size() if none.
  std::size_t find_next(std::size_t from) const noexcept {
    if (from >= size_)
      return size_;
    std::size_t wi = from >> 6;
    std::uint64_t w = words_[wi] & (~std::uint64_t{0} << (from & 63));
    for (;;) {
      if (w)
        return (wi << 6) + static_cast<std::size_t>(std::countr_zero(w));
      if (++wi >= words_.size())
        return size_;
      w = words_[wi];
    }
  }
  std::size_t find_first() const noexcept { return find_next(0); }

  template <class F> void for_each(F &&f) const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      std::uint64_t w = words_[wi];
      while (w) {
        f((wi << 6) + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  const std::vector<std::uint64_t> &words() const noexcept { return words_; }

  friend bool operator==(const Bitset &, const Bitset &) = default;

private:
  void trim() noexcept {
    if (size_ % 64 && !words_.empty())
      words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
  }

  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

} // namespace factorix
