#include "factorix/certificate.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "factorix/error.hpp"

namespace factorix {

std::vector<std::size_t> Certificate::pattern() const {
  std::vector<std::size_t> p;
  for (const auto &f : factors)
    p.push_back(f.size());
  return p;
}

bool Certificate::normalized() const {
  return std::all_of(factors.begin(), factors.end(),
                     [](const FactorSet &f) { return f.contains(0); });
}

std::optional<FactorSet> product_distinct(const GroupTable &g, const FactorSet &s,
                                          const FactorSet &t) {
  Bitset out(g.order());
  for (Elem a : s.elements())
    for (Elem b : t.elements())
      if (out.test_and_set(g.mul(a, b)))
        return std::nullopt;
  return FactorSet::from_bits(out);
}

Verdict verify_certificate(const Certificate &c) {
  Verdict v;
  if (!c.group) {
    v.detail = "certificate has no group";
    return v;
  }
  const GroupTable &g = *c.group;
  if (c.factors.empty()) {
    v.detail = "certificate has no factors";
    return v;
  }
  for (const auto &f : c.factors)
    if (f.group_order() != g.order()) {
      v.detail = "factor belongs to a different group";
      return v;
    }
  FactorSet acc = c.factors.front();
  for (std::size_t i = 1; i < c.factors.size(); ++i) {
    auto next = product_distinct(g, acc, c.factors[i]);
    if (!next) {
      v.failing_prefix = i + 1;
      v.detail = "product of the first " + std::to_string(i + 1) + " factors collides";
      return v;
    }
    acc = std::move(*next);
  }
  if (acc.size() != g.order()) {
    v.detail = "product covers " + std::to_string(acc.size()) + " of " +
               std::to_string(g.order()) + " elements";
    return v;
  }
  v.valid = true;
  return v;
}

std::size_t count_unique_products(const Certificate &c) {
  const GroupTable &g = *c.group;
  std::vector<std::size_t> hits(g.order(), 0);
  std::function<void(std::size_t, Elem)> rec = [&](std::size_t i, Elem acc) {
    if (i == c.factors.size()) {
      ++hits[acc];
      return;
    }
    for (Elem e : c.factors[i].elements())
      rec(i + 1, g.mul(acc, e));
  };
  rec(0, 0);
  return static_cast<std::size_t>(std::count(hits.begin(), hits.end(), std::size_t{1}));
}

Certificate normalize(const Certificate &c) {
  const GroupTable &g = *c.group;
  Certificate out{c.group, {}};
  Elem prev = 0;
  for (const auto &f : c.factors) {
    const Elem cur = g.mul(prev, f.front());
    const Elem cur_inv = g.inv(cur);
    std::vector<Elem> shifted;
    for (Elem a : f.elements())
      shifted.push_back(g.mul(g.mul(prev, a), cur_inv));
    out.factors.emplace_back(g.order(), std::move(shifted));
    prev = cur;
  }
  return out;
}

Certificate reverse(const Certificate &c) {
  Certificate out{c.group, {}};
  for (auto it = c.factors.rbegin(); it != c.factors.rend(); ++it)
    out.factors.push_back(inverse_set(*c.group, *it));
  return out;
}

std::vector<FactorSet> embed_factors(const Certificate &of_h, const Subgroup &h) {
  if (!of_h.group || of_h.group->order() != h.order())
    throw Error(ErrorCode::PreconditionFailed, "certificate is not over a table of the subgroup");
  const auto members = h.members().elements();
  std::vector<FactorSet> out;
  for (const auto &f : of_h.factors) {
    std::vector<Elem> mapped;
    for (Elem e : f.elements())
      mapped.push_back(members[e]);
    out.emplace_back(h.parent().order(), std::move(mapped));
  }
  return out;
}

Certificate lift_by_transversal(const Certificate &of_h, const Subgroup &h, Side side) {
  const GroupTable &g = h.parent();
  Certificate out{h.parent_ptr(), embed_factors(of_h, h)};
  if (side == Side::Right) {
    out.factors.emplace_back(g.order(), right_transversal(h));
  } else {
    out.factors.insert(out.factors.begin(), FactorSet(g.order(), left_transversal(h)));
  }
  return strip_singletons(out);
}

Certificate lift_by_quotient(const Certificate &of_quotient, const Subgroup &n,
                             std::size_t position) {
  Quotient q = quotient_group(n);
  if (!of_quotient.group || of_quotient.group->order() != q.table->order())
    throw Error(ErrorCode::PreconditionFailed, "certificate is not over the quotient table");
  if (position > of_quotient.factors.size())
    throw Error(ErrorCode::InvalidPosition, "position " + std::to_string(position) +
                                                " exceeds factor count " +
                                                std::to_string(of_quotient.factors.size()));
  const GroupTable &g = n.parent();
  Certificate out{n.parent_ptr(), {}};
  for (const auto &f : of_quotient.factors) {
    std::vector<Elem> lifted;
    for (Elem y : f.elements())
      lifted.push_back(q.coset_reps[y]);
    out.factors.emplace_back(g.order(), std::move(lifted));
  }
  // N is normal, so N x = x N and the inserted copy needs no conjugation.
  out.factors.insert(out.factors.begin() + static_cast<std::ptrdiff_t>(position), n.members());
  return strip_singletons(out);
}

Certificate compose_sandwich(const Subgroup &a, const Certificate &a_cert, const Subgroup &b,
                             const Certificate &b_cert) {
  if (a.parent().order() != b.parent().order())
    throw Error(ErrorCode::PreconditionFailed, "subgroups have different parents");
  if (!conjugate_intersection_trivial(a, b))
    throw Error(ErrorCode::ConditionFailed, "A^x ∩ B is nontrivial for some x");
  const GroupTable &g = a.parent();
  Certificate out{a.parent_ptr(), embed_factors(a_cert, a)};
  auto dc = double_cosets(a, b);
  out.factors.emplace_back(g.order(), dc.representatives);
  for (auto &f : embed_factors(b_cert, b))
    out.factors.push_back(std::move(f));
  return strip_singletons(out);
}

bool divisibility_prune(const GroupTable &g, const FactorSet &s, EndPosition) {
  return generated_order(g, s.elements()) % s.size() == 0;
}

Certificate refine_factor(const Certificate &c, std::size_t index, std::vector<FactorSet> parts) {
  if (index >= c.factors.size() || parts.empty())
    throw Error(ErrorCode::InvalidPosition, "no factor at position " + std::to_string(index));
  const GroupTable &g = *c.group;
  FactorSet acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) {
    auto next = product_distinct(g, acc, parts[i]);
    if (!next)
      throw Error(ErrorCode::InvalidCertificate, "refinement parts do not multiply uniquely");
    acc = std::move(*next);
  }
  if (!(acc == c.factors[index]))
    throw Error(ErrorCode::InvalidCertificate, "refinement parts do not multiply to the factor");
  Certificate out{c.group, {}};
  for (std::size_t i = 0; i < c.factors.size(); ++i) {
    if (i == index)
      for (auto &p : parts)
        out.factors.push_back(std::move(p));
    else
      out.factors.push_back(c.factors[i]);
  }
  return out;
}

Certificate merge_adjacent(const Certificate &c, std::size_t index) {
  if (index + 1 >= c.factors.size())
    throw Error(ErrorCode::InvalidPosition, "cannot merge at position " + std::to_string(index));
  auto merged = product_distinct(*c.group, c.factors[index], c.factors[index + 1]);
  if (!merged)
    throw Error(ErrorCode::InvalidCertificate, "adjacent factors collide");
  Certificate out{c.group, {}};
  for (std::size_t i = 0; i < c.factors.size(); ++i) {
    if (i == index) {
      out.factors.push_back(std::move(*merged));
      ++i;
    } else {
      out.factors.push_back(c.factors[i]);
    }
  }
  return out;
}

Certificate strip_singletons(const Certificate &c) {
  // A singleton {g} is absorbed into its right neighbour as g·A (or the
  // left neighbour as A·g when it is last), which keeps the product intact.
  const GroupTable &g = *c.group;
  Certificate out{c.group, {}};
  Elem carry = 0;
  for (const auto &f : c.factors) {
    if (f.size() == 1) {
      carry = g.mul(carry, f.front());
      continue;
    }
    out.factors.push_back(carry == 0 ? f : left_translate(g, carry, f));
    carry = 0;
  }
  if (out.factors.empty())
    out.factors.push_back(FactorSet::whole(g.order()));
  if (carry != 0)
    out.factors.back() = right_translate(g, out.factors.back(), carry);
  return out;
}

Certificate whole_group_certificate(const GroupPtr &g) {
  return Certificate{g, {FactorSet::whole(g->order())}};
}

} // namespace factorix
