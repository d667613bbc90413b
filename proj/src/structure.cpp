#include "factorix/structure.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "factorix/error.hpp"

namespace factorix {

// ---------------------------------------------------------------- Subgroup

std::optional<Bitset> closure(const GroupTable &g, std::span<const Elem> generators,
                              std::size_t cap) {
  Bitset bits(g.order());
  std::vector<Elem> members{0};
  bits.set(0);
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (Elem s : generators) {
      Elem y = g.mul(members[i], s);
      if (!bits.test_and_set(y)) {
        members.push_back(y);
        if (members.size() > cap)
          return std::nullopt;
      }
    }
  }
  return bits;
}

std::size_t generated_order(const GroupTable &g, std::span<const Elem> s) {
  return closure(g, s)->count();
}

Subgroup::Subgroup(GroupPtr parent, std::vector<Elem> generators)
    : parent_(std::move(parent)), generators_(std::move(generators)) {
  for (Elem e : generators_)
    if (e >= parent_->order())
      throw Error(ErrorCode::ElementNotInGroup, "generator index out of range");
  members_ = FactorSet::from_bits(*closure(*parent_, generators_));
}

Subgroup Subgroup::from_members(GroupPtr parent, FactorSet members, std::vector<Elem> generators) {
  const GroupTable &g = *parent;
  if (!members.contains(0))
    throw Error(ErrorCode::PreconditionFailed, "subgroup must contain the identity");
  for (Elem a : members.elements()) {
    if (!members.contains(g.inv(a)))
      throw Error(ErrorCode::PreconditionFailed, "member set not closed under inverses");
    for (Elem b : members.elements())
      if (!members.contains(g.mul(a, b)))
        throw Error(ErrorCode::PreconditionFailed, "member set not closed under products");
  }
  Subgroup s;
  s.parent_ = std::move(parent);
  s.members_ = std::move(members);
  s.generators_ = std::move(generators);
  return s;
}

Subgroup Subgroup::whole(GroupPtr parent) {
  Subgroup s;
  s.members_ = FactorSet::whole(parent->order());
  s.generators_ = {};
  for (const auto &gen : parent->generators())
    if (auto e = parent->find(gen))
      s.generators_.push_back(*e);
  s.parent_ = std::move(parent);
  return s;
}

Subgroup Subgroup::trivial(GroupPtr parent) { return Subgroup(std::move(parent), {}); }

// ---------------------------------------------------------------- cosets

namespace {

template <class Product>
std::vector<Elem> transversal_impl(const Subgroup &h, Product product) {
  const GroupTable &g = h.parent();
  Bitset covered(g.order());
  std::vector<Elem> reps;
  for (std::size_t x = 0; x < g.order(); ++x) {
    if (covered.test(x))
      continue;
    reps.push_back(static_cast<Elem>(x));
    for (Elem m : h.members().elements())
      covered.set(product(g, m, static_cast<Elem>(x)));
  }
  return reps;
}

template <class Product>
std::vector<std::size_t> coset_index_impl(const Subgroup &h, std::span<const Elem> reps,
                                          Product product) {
  const GroupTable &g = h.parent();
  std::vector<std::size_t> index(g.order(), SIZE_MAX);
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (Elem m : h.members().elements())
      index[product(g, m, reps[i])] = i;
  return index;
}

Elem right_product(const GroupTable &g, Elem m, Elem x) { return g.mul(m, x); }
Elem left_product(const GroupTable &g, Elem m, Elem x) { return g.mul(x, m); }

} // namespace

std::vector<Elem> right_transversal(const Subgroup &h) { return transversal_impl(h, right_product); }
std::vector<Elem> left_transversal(const Subgroup &h) { return transversal_impl(h, left_product); }

std::vector<std::size_t> right_coset_index(const Subgroup &h, std::span<const Elem> transversal) {
  return coset_index_impl(h, transversal, right_product);
}
std::vector<std::size_t> left_coset_index(const Subgroup &h, std::span<const Elem> transversal) {
  return coset_index_impl(h, transversal, left_product);
}

DoubleCosetDecomposition double_cosets(const Subgroup &a, const Subgroup &b) {
  if (a.parent_ptr() != b.parent_ptr() && a.parent().order() != b.parent().order())
    throw Error(ErrorCode::PreconditionFailed, "subgroups have different parents");
  const GroupTable &g = a.parent();
  Bitset covered(g.order());
  DoubleCosetDecomposition out;
  for (std::size_t x = 0; x < g.order(); ++x) {
    if (covered.test(x))
      continue;
    std::size_t size = 0;
    for (Elem p : a.members().elements()) {
      Elem px = g.mul(p, static_cast<Elem>(x));
      for (Elem q : b.members().elements())
        if (!covered.test_and_set(g.mul(px, q)))
          ++size;
    }
    out.representatives.push_back(static_cast<Elem>(x));
    out.coset_sizes.push_back(size);
  }
  return out;
}

bool conjugate_intersection_trivial(const Subgroup &a, const Subgroup &b) {
  const GroupTable &g = a.parent();
  for (std::size_t x = 0; x < g.order(); ++x)
    for (Elem p : a.members().elements())
      if (p != 0 && b.contains(g.conjugate(p, static_cast<Elem>(x))))
        return false;
  return true;
}

bool is_normal(const Subgroup &n) {
  const GroupTable &g = n.parent();
  for (std::size_t x = 0; x < g.order(); ++x)
    for (Elem m : n.members().elements())
      if (!n.contains(g.conjugate(m, static_cast<Elem>(x))))
        return false;
  return true;
}

Quotient quotient_group(const Subgroup &n) {
  if (!is_normal(n))
    throw Error(ErrorCode::NotNormal, "subgroup of order " + std::to_string(n.order()) +
                                          " is not normal");
  const GroupTable &g = n.parent();
  Quotient q;
  q.coset_reps = left_transversal(n);
  auto index = left_coset_index(n, q.coset_reps);
  q.projection.resize(g.order());
  for (std::size_t x = 0; x < g.order(); ++x)
    q.projection[x] = static_cast<Elem>(index[x]);
  const std::size_t k = q.coset_reps.size();
  std::vector<Elem> table(k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      table[i * k + j] = q.projection[g.mul(q.coset_reps[i], q.coset_reps[j])];
  q.table = std::make_shared<const GroupTable>(GroupTable::from_cayley(std::move(table), k));
  return q;
}

// ---------------------------------------------------------------- search

std::optional<Subgroup> find_subgroup_of_order(const GroupPtr &gp, std::size_t m) {
  const GroupTable &g = *gp;
  const std::size_t n = g.order();
  if (m == 0 || n % m != 0)
    return std::nullopt;
  if (m == 1)
    return Subgroup::trivial(gp);
  if (m == n)
    return Subgroup::whole(gp);

  std::vector<Elem> cands;
  for (std::size_t x = 1; x < n; ++x)
    if (m % static_cast<std::size_t>(g.element_order(static_cast<Elem>(x))) == 0)
      cands.push_back(static_cast<Elem>(x));

  struct Found {
    std::vector<Elem> members;
    std::vector<Elem> gens;
  };
  std::optional<Found> best;
  auto consider = [&](const Bitset &bits, std::vector<Elem> gens) {
    std::vector<Elem> members;
    bits.for_each([&](std::size_t i) { members.push_back(static_cast<Elem>(i)); });
    if (!best || members < best->members)
      best = Found{std::move(members), std::move(gens)};
  };

  // Level 1: cyclic subgroups.
  for (Elem x : cands)
    if (static_cast<std::size_t>(g.element_order(x)) == m) {
      std::vector<Elem> gens{x};
      consider(*closure(g, gens), gens);
    }

  // Level 2: two-generator closures. Proper subgroups seen along the way
  // seed level 3.
  std::set<std::vector<std::uint64_t>> seen;
  std::vector<std::pair<Bitset, std::vector<Elem>>> partial;
  if (!best) {
    for (std::size_t i = 0; i < cands.size(); ++i) {
      std::vector<Elem> one{cands[i]};
      Bitset cyc = *closure(g, one);
      for (std::size_t j = i + 1; j < cands.size(); ++j) {
        if (cyc.test(cands[j]))
          continue;
        std::vector<Elem> gens{cands[i], cands[j]};
        auto c = closure(g, gens, m);
        if (!c)
          continue;
        const std::size_t size = c->count();
        if (size == m)
          consider(*c, gens);
        else if (!best && m % size == 0 && seen.insert(c->words()).second)
          partial.emplace_back(*c, gens);
      }
    }
  }

  // Level 3: adjoin one more element to each proper two-generator subgroup.
  if (!best) {
    for (const auto &[bits, gens] : partial) {
      for (Elem z : cands) {
        if (bits.test(z))
          continue;
        std::vector<Elem> g3 = gens;
        g3.push_back(z);
        auto c = closure(g, g3, m);
        if (c && c->count() == m)
          consider(*c, g3);
      }
    }
  }

  if (!best)
    return std::nullopt;
  return Subgroup::from_members(gp, FactorSet(n, best->members), best->gens);
}

namespace {

bool is_prime(long long p) {
  if (p < 2)
    return false;
  for (long long d = 2; d * d <= p; ++d)
    if (p % d == 0)
      return false;
  return true;
}

bool is_power_of(std::size_t x, std::size_t p) {
  while (x % p == 0)
    x /= p;
  return x == 1;
}

} // namespace

Subgroup sylow_subgroup(const GroupPtr &gp, int p) {
  const GroupTable &g = *gp;
  const std::size_t n = g.order();
  if (!is_prime(p) || n % static_cast<std::size_t>(p) != 0)
    throw Error(ErrorCode::NoSuchPrime, std::to_string(p) + " is not a prime divisor of " +
                                            std::to_string(n));
  const auto pp = static_cast<std::size_t>(p);
  std::size_t target = 1;
  for (std::size_t r = n; r % pp == 0; r /= pp)
    target *= pp;

  std::vector<Elem> gens;
  Bitset current = *closure(g, gens);
  bool changed = true;
  while (current.count() < target && changed) {
    changed = false;
    for (std::size_t x = 1; x < n && current.count() < target; ++x) {
      if (current.test(x) || !is_power_of(static_cast<std::size_t>(g.element_order(static_cast<Elem>(x))), pp))
        continue;
      auto trial = gens;
      trial.push_back(static_cast<Elem>(x));
      auto c = closure(g, trial, target);
      if (c && is_power_of(c->count(), pp)) {
        gens = std::move(trial);
        current = *c;
        changed = true;
      }
    }
  }
  return Subgroup::from_members(gp, FactorSet::from_bits(current), gens);
}

GroupPtr subgroup_table(const Subgroup &h) {
  const GroupTable &g = h.parent();
  std::vector<Perm> gens;
  if (g.has_permutations())
    for (Elem e : h.generators())
      gens.push_back(g.element(e));
  return std::make_shared<const GroupTable>(
      GroupTable::restrict_to(g, h.members().elements(), std::move(gens)));
}

std::vector<Elem> conjugacy_class_representatives(const GroupTable &g) {
  Bitset seen(g.order());
  std::vector<Elem> reps;
  for (std::size_t x = 0; x < g.order(); ++x) {
    if (seen.test(x))
      continue;
    reps.push_back(static_cast<Elem>(x));
    for (std::size_t y = 0; y < g.order(); ++y)
      seen.set(g.conjugate(static_cast<Elem>(x), static_cast<Elem>(y)));
  }
  return reps;
}

} // namespace factorix
