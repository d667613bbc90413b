#pragma once

#include <span>
#include <vector>

#include "factorix/bitset.hpp"
#include "factorix/group.hpp"

namespace factorix {

/// A nonempty set of element indices with both sorted-list and bitset views.
class FactorSet {
public:
  FactorSet() = default;

  /// Sorts `elements`; throws InvalidCertificate on duplicates, an empty
  /// list, or indices outside [0, group_order).
  FactorSet(std::size_t group_order, std::vector<Elem> elements);

  static FactorSet from_bits(const Bitset &bits);
  static FactorSet singleton(std::size_t group_order, Elem e);
  static FactorSet whole(std::size_t group_order);

  std::size_t size() const noexcept { return elements_.size(); }
  std::size_t group_order() const noexcept { return bits_.size(); }
  std::span<const Elem> elements() const noexcept { return elements_; }
  const Bitset &bits() const noexcept { return bits_; }
  bool contains(Elem e) const noexcept { return e < bits_.size() && bits_.test(e); }
  Elem front() const { return elements_.front(); }

  friend bool operator==(const FactorSet &a, const FactorSet &b) {
    return a.elements_ == b.elements_ && a.bits_.size() == b.bits_.size();
  }
  friend bool operator<(const FactorSet &a, const FactorSet &b) {
    return a.elements_ < b.elements_;
  }

private:
  std::vector<Elem> elements_;
  Bitset bits_;
};

/// Elementwise inverse.
FactorSet inverse_set(const GroupTable &g, const FactorSet &s);

/// Left translate x·S or right translate S·x.
FactorSet left_translate(const GroupTable &g, Elem x, const FactorSet &s);
FactorSet right_translate(const GroupTable &g, const FactorSet &s, Elem x);

} // namespace factorix
