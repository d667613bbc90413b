#include "factorix/factor_set.hpp"

#include <algorithm>

#include "factorix/error.hpp"

namespace factorix {

FactorSet::FactorSet(std::size_t group_order, std::vector<Elem> elements)
    : elements_(std::move(elements)), bits_(group_order) {
  if (elements_.empty())
    throw Error(ErrorCode::InvalidCertificate, "factor set is empty");
  std::sort(elements_.begin(), elements_.end());
  for (Elem e : elements_) {
    if (e >= group_order)
      throw Error(ErrorCode::InvalidCertificate, "element index out of range");
    if (bits_.test_and_set(e))
      throw Error(ErrorCode::InvalidCertificate, "factor set has a repeated element");
  }
}

FactorSet FactorSet::from_bits(const Bitset &bits) {
  std::vector<Elem> elems;
  bits.for_each([&](std::size_t i) { elems.push_back(static_cast<Elem>(i)); });
  return FactorSet(bits.size(), std::move(elems));
}

FactorSet FactorSet::singleton(std::size_t group_order, Elem e) { return FactorSet(group_order, {e}); }

FactorSet FactorSet::whole(std::size_t group_order) {
  std::vector<Elem> all(group_order);
  for (std::size_t i = 0; i < group_order; ++i)
    all[i] = static_cast<Elem>(i);
  return FactorSet(group_order, std::move(all));
}

FactorSet inverse_set(const GroupTable &g, const FactorSet &s) {
  std::vector<Elem> out;
  for (Elem e : s.elements())
    out.push_back(g.inv(e));
  return FactorSet(g.order(), std::move(out));
}

FactorSet left_translate(const GroupTable &g, Elem x, const FactorSet &s) {
  std::vector<Elem> out;
  for (Elem e : s.elements())
    out.push_back(g.mul(x, e));
  return FactorSet(g.order(), std::move(out));
}

FactorSet right_translate(const GroupTable &g, const FactorSet &s, Elem x) {
  std::vector<Elem> out;
  for (Elem e : s.elements())
    out.push_back(g.mul(e, x));
  return FactorSet(g.order(), std::move(out));
}

} // namespace factorix
