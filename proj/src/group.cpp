#include "factorix/group.hpp"

#include <algorithm>
#include <deque>
#include <string>
#include <unordered_set>

#include "factorix/error.hpp"

namespace factorix {

GroupTable GroupTable::generate(std::span<const Perm> generators, int degree, std::size_t cap) {
  if (degree == 0)
    degree = generators.empty() ? 1 : generators.front().degree();
  for (const auto &g : generators)
    if (g.degree() != degree)
      throw Error(ErrorCode::DegreeMismatch, "generator " + g.to_cycles() + " has degree " +
                                                 std::to_string(g.degree()) + ", expected " +
                                                 std::to_string(degree));
  cap = std::min(cap, static_cast<std::size_t>(UINT16_MAX));

  GroupTable t;
  t.degree_ = degree;
  t.generators_.assign(generators.begin(), generators.end());

  const Perm e(degree);
  std::unordered_set<std::uint64_t> seen{e.key()};
  std::vector<Perm> found{e};
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    const Perm x = found[queue.front()];
    queue.pop_front();
    for (const auto &g : generators) {
      Perm y = compose(x, g);
      if (seen.insert(y.key()).second) {
        if (found.size() >= cap)
          throw Error(ErrorCode::OrderCapExceeded,
                      "closure exceeds " + std::to_string(cap) + " elements");
        found.push_back(y);
        queue.push_back(found.size() - 1);
      }
    }
  }
  std::sort(found.begin(), found.end());
  t.elements_ = std::move(found);
  t.order_ = t.elements_.size();
  t.keys_.reserve(t.order_);
  for (const auto &p : t.elements_)
    t.keys_.push_back(p.key());
  t.fill_tables();
  return t;
}

GroupTable GroupTable::from_cayley(std::vector<Elem> table, std::size_t order) {
  if (order == 0 || table.size() != order * order)
    throw Error(ErrorCode::PreconditionFailed, "Cayley table has wrong shape");
  GroupTable t;
  t.order_ = order;
  t.table_ = std::move(table);
  for (std::size_t x = 0; x < order; ++x)
    if (t.table_[x] != x || t.table_[x * order] != x)
      throw Error(ErrorCode::PreconditionFailed, "index 0 is not the identity");
  t.fill_tables();
  return t;
}

GroupTable GroupTable::restrict_to(const GroupTable &parent, std::span<const Elem> members,
                                   std::vector<Perm> generators) {
  if (members.empty() || members.front() != 0)
    throw Error(ErrorCode::PreconditionFailed, "subgroup members must start with the identity");
  const std::size_t n = members.size();
  std::vector<int> pos(parent.order(), -1);
  for (std::size_t i = 0; i < n; ++i)
    pos[members[i]] = static_cast<int>(i);

  GroupTable t;
  t.order_ = n;
  t.degree_ = parent.degree_;
  t.generators_ = std::move(generators);
  if (parent.has_permutations()) {
    for (Elem m : members) {
      t.elements_.push_back(parent.elements_[m]);
      t.keys_.push_back(parent.keys_[m]);
    }
  }
  t.table_.resize(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      int p = pos[parent.mul(members[i], members[j])];
      if (p < 0)
        throw Error(ErrorCode::PreconditionFailed, "member set is not closed");
      t.table_[i * n + j] = static_cast<Elem>(p);
    }
  t.fill_tables();
  return t;
}

void GroupTable::fill_tables() {
  const std::size_t n = order_;
  if (table_.empty() && n <= kFullTableLimit) {
    table_.resize(n * n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        table_[a * n + b] = mul_slow(static_cast<Elem>(a), static_cast<Elem>(b));
  }
  inv_.assign(n, 0);
  order_of_.assign(n, 1);
  for (std::size_t a = 0; a < n; ++a) {
    if (has_permutations()) {
      inv_[a] = index_of(elements_[a].inverse());
    } else {
      for (std::size_t b = 0; b < n; ++b)
        if (mul(static_cast<Elem>(a), static_cast<Elem>(b)) == 0) {
          inv_[a] = static_cast<Elem>(b);
          break;
        }
    }
    int m = 1;
    Elem y = static_cast<Elem>(a);
    while (y != 0) {
      y = mul(y, static_cast<Elem>(a));
      ++m;
    }
    order_of_[a] = m;
  }
}

Elem GroupTable::mul_slow(Elem a, Elem b) const {
  return index_of(compose(elements_[a], elements_[b]));
}

std::optional<Elem> GroupTable::find(const Perm &p) const {
  if (!has_permutations() || p.degree() != degree_)
    return std::nullopt;
  const auto k = p.key();
  auto it = std::lower_bound(keys_.begin(), keys_.end(), k);
  if (it == keys_.end() || *it != k)
    return std::nullopt;
  return static_cast<Elem>(it - keys_.begin());
}

Elem GroupTable::index_of(const Perm &p) const {
  if (auto e = find(p))
    return *e;
  throw Error(ErrorCode::ElementNotInGroup, p.to_cycles() + " is not in the group");
}

GroupPtr generate_group(std::span<const Perm> generators, int degree, std::size_t cap) {
  return std::make_shared<const GroupTable>(GroupTable::generate(generators, degree, cap));
}

int element_order(Elem x, const GroupTable &g) { return g.element_order(x); }

} // namespace factorix
