#include <algorithm>
#include <chrono>
#include <functional>
#include <string>

#include "factorix/error.hpp"
#include "factorix/patterns.hpp"
#include "search_internal.hpp"

namespace factorix {

using detail::block;
using detail::UnitResult;

std::string to_string(Strategy s) {
  switch (s) {
  case Strategy::Case1:
    return "case1";
  case Strategy::Case2:
    return "case2";
  case Strategy::Case3:
    return "case3";
  case Strategy::Generic:
    return "generic";
  }
  return "?";
}

std::string to_string(SearchMode m) {
  switch (m) {
  case SearchMode::FindFirst:
    return "find-first";
  case SearchMode::FindAll:
    return "find-all";
  case SearchMode::Refute:
    return "refute";
  }
  return "?";
}

std::uint64_t case1_formula(std::size_t order, std::size_t a, std::size_t b, std::size_t c,
                            std::size_t d) {
  return binomial(order / a - d, b - 1) * binomial(order / d - a, c - 1);
}

std::uint64_t case2_formula(std::size_t order, std::size_t a, std::size_t b, std::size_t c,
                            std::size_t d) {
  return binomial(order / a - d, b - 1) * binomial(order - a * b * d, c - 1);
}

std::uint64_t case3_formula(std::size_t order, std::size_t a, std::size_t b, std::size_t d) {
  return binomial(order / a - d, b - 1);
}

std::vector<Elem> two_element_end_candidates(const GroupTable &g, bool prefer_order4) {
  std::vector<Elem> four, other;
  for (std::size_t x = 1; x < g.order(); ++x) {
    const int o = g.element_order(static_cast<Elem>(x));
    if (o % 2 != 0)
      continue;
    (prefer_order4 && o == 4 ? four : other).push_back(static_cast<Elem>(x));
  }
  four.insert(four.end(), other.begin(), other.end());
  return four;
}

namespace {

std::size_t pattern_product(const std::vector<std::size_t> &p) {
  std::size_t r = 1;
  for (auto m : p)
    r *= m;
  return r;
}

void require(bool ok, const std::string &what) {
  if (!ok)
    throw Error(ErrorCode::AnchorInvalid, what);
}

/// Right-coset representatives of A not met by D, i.e. W'.
std::vector<Elem> free_right_reps(const Subgroup &a, std::span<const Elem> d) {
  const auto w = right_transversal(a);
  const auto idx = right_coset_index(a, w);
  std::vector<bool> hit(w.size(), false);
  for (Elem x : d)
    hit[idx[x]] = true;
  std::vector<Elem> out;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (!hit[i])
      out.push_back(w[i]);
  return out;
}

/// Left-coset representatives of D not met by A, i.e. V'.
std::vector<Elem> free_left_reps(const Subgroup &d, std::span<const Elem> a) {
  const auto v = left_transversal(d);
  const auto idx = left_coset_index(d, v);
  std::vector<bool> hit(v.size(), false);
  for (Elem x : a)
    hit[idx[x]] = true;
  std::vector<Elem> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!hit[i])
      out.push_back(v[i]);
  return out;
}

/// Chooses C' (k elements of `pool`) so that the blocks S·c·D, together with
/// the base block S·D, tile the group. Pruned branches still add their
/// whole subtree to the candidate count.
class MiddleCompletion {
public:
  MiddleCompletion(const GroupTable &g, const FactorSet &s, const FactorSet &d,
                   const std::vector<Elem> &pool, std::size_t k)
      : g_(g), pool_(pool), k_(k) {
    base_ = block(g, s.elements(), 0, d.elements());
    if (!base_)
      return;
    blocks_.reserve(pool.size());
    for (Elem x : pool) {
      auto b = block(g, s.elements(), x, d.elements());
      if (b && b->intersects(*base_))
        b.reset();
      blocks_.push_back(std::move(b));
    }
  }

  bool base_valid() const { return base_.has_value(); }

  template <class Visit>
  void run(UnitResult &r, const Budget &budget, Visit &&visit) {
    if (!base_) {
      r.candidates += binomial(pool_.size(), k_);
      return;
    }
    std::vector<Elem> chosen;
    Bitset covered = *base_;
    rec(0, covered, chosen, r, budget, visit);
  }

private:
  template <class Visit>
  bool rec(std::size_t start, const Bitset &covered, std::vector<Elem> &chosen, UnitResult &r,
           const Budget &budget, Visit &visit) {
    const std::size_t depth = chosen.size();
    if (depth == k_) {
      ++r.candidates;
      ++r.product_checks;
      return visit(chosen);
    }
    if ((++r.nodes & 1023) == 0 && budget.expired()) {
      r.cut = true;
      return false;
    }
    const std::size_t n = pool_.size();
    for (std::size_t j = start; j + (k_ - depth) <= n; ++j) {
      const std::uint64_t subtree = binomial(n - j - 1, k_ - depth - 1);
      const auto &b = blocks_[j];
      if (!b || b->intersects(covered)) {
        r.candidates += subtree;
        continue;
      }
      Bitset next = covered;
      next |= *b;
      chosen.push_back(pool_[j]);
      const bool go_on = rec(j + 1, next, chosen, r, budget, visit);
      chosen.pop_back();
      if (!go_on) {
        // Count the untouched remainder so a stopped unit reports only
        // what it actually covered.
        return false;
      }
    }
    return true;
  }

  const GroupTable &g_;
  const std::vector<Elem> &pool_;
  std::size_t k_;
  std::optional<Bitset> base_;
  std::vector<std::optional<Bitset>> blocks_;
};

Certificate make_cert(const GroupPtr &g, std::vector<FactorSet> factors) {
  return Certificate{g, std::move(factors)};
}


SearchReport finish(SearchReport rep, std::chrono::steady_clock::time_point t0) {
  rep.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

Certificate reversed_cert(const Certificate &c) { return reverse(c); }

} // namespace

SearchReport case1_search(const SearchTask &task) {
  const auto t0 = std::chrono::steady_clock::now();
  const GroupTable &g = *task.group;
  require(task.first && task.first->is_subgroup() && task.last && task.last->is_subgroup(),
          "case 1 needs subgroup anchors at both ends");
  require(task.pattern.size() == 4, "case 1 pattern has four factors");
  const Subgroup &a = *task.first->subgroup;
  const Subgroup &d = *task.last->subgroup;
  const std::size_t b_size = task.pattern[1], c_size = task.pattern[2];
  require(task.pattern[0] == a.order() && task.pattern[3] == d.order(),
          "anchor orders do not match the pattern");
  require(pattern_product(task.pattern) == g.order(), "pattern product differs from |G|");
  require(b_size >= 1 && c_size >= 1, "middle factors must be nonempty");
  require(product_distinct(g, a.members(), d.members()).has_value(),
          "A and D meet outside the identity");

  SearchReport rep;
  rep.strategy = Strategy::Case1;
  rep.mode = task.mode;
  const auto w = free_right_reps(a, d.members().elements());
  const auto v = free_left_reps(d, a.members().elements());
  rep.predicted_candidates = case1_formula(g.order(), a.order(), b_size, c_size, d.order());
  const auto b_choices = detail::subsets(w, b_size - 1);
  Budget budget(task.limits.budget_seconds);
  const bool find_all = task.mode == SearchMode::FindAll;

  detail::drive_units(
      b_choices.size(), task, budget,
      [&](std::size_t i, UnitResult &r) {
        const FactorSet bset = detail::with_identity(g.order(), b_choices[i]);
        auto s = product_distinct(g, a.members(), bset);
        if (!s) {
          r.candidates += binomial(v.size(), c_size - 1);
          return;
        }
        MiddleCompletion mc(g, *s, d.members(), v, c_size - 1);
        mc.run(r, budget, [&](const std::vector<Elem> &cc) {
          const bool ok = detail::record(make_cert(task.group, {a.members(), bset, detail::with_identity(g.order(), cc),
                                     d.members()}),
                                    r, task.limits.max_solutions);
          return find_all || !ok;
        });
      },
      rep);
  return finish(std::move(rep), t0);
}

namespace {

SearchReport case2_forward(const SearchTask &task, const Subgroup &a, const FactorSet &d) {
  const GroupTable &g = *task.group;
  const bool three = task.pattern.size() == 3;
  const std::size_t b_size = task.pattern[1];
  const std::size_t c_size = three ? 1 : task.pattern[2];
  require(task.pattern.front() == a.order() && task.pattern.back() == d.size(),
          "anchor sizes do not match the pattern");
  require(d.contains(0), "the set anchor must contain the identity");
  require(product_distinct(g, a.members(), d).has_value(),
          "the cosets Ax, x in D, are not distinct");

  SearchReport rep;
  rep.strategy = Strategy::Case2;
  rep.mode = task.mode;
  const auto w = free_right_reps(a, d.elements());
  rep.predicted_candidates = case2_formula(g.order(), a.order(), b_size, c_size, d.size());
  const auto b_choices = detail::subsets(w, b_size - 1);
  Budget budget(task.limits.budget_seconds);
  const bool find_all = task.mode == SearchMode::FindAll;
  const std::size_t abd = a.order() * b_size * d.size();

  detail::drive_units(
      b_choices.size(), task, budget,
      [&](std::size_t i, UnitResult &r) {
        const FactorSet bset = detail::with_identity(g.order(), b_choices[i]);
        auto s = product_distinct(g, a.members(), bset);
        if (three) {
          ++r.candidates;
          ++r.product_checks;
          if (s && product_distinct(g, *s, d))
            detail::record(make_cert(task.group, {a.members(), bset, d}),
                                    r, task.limits.max_solutions);
          return;
        }
        if (!s) {
          r.candidates += binomial(g.order() - abd, c_size - 1);
          return;
        }
        auto sd = product_distinct(g, *s, d);
        if (!sd) {
          r.candidates += binomial(g.order() - abd, c_size - 1);
          return;
        }
        std::vector<Elem> pool;
        for (std::size_t x = 0; x < g.order(); ++x)
          if (!sd->contains(static_cast<Elem>(x)))
            pool.push_back(static_cast<Elem>(x));
        MiddleCompletion mc(g, *s, d, pool, c_size - 1);
        mc.run(r, budget, [&](const std::vector<Elem> &cc) {
          const bool ok = detail::record(make_cert(task.group, {a.members(), bset, detail::with_identity(g.order(), cc), d}),
                                    r, task.limits.max_solutions);
          return find_all || !ok;
        });
      },
      rep);
  return rep;
}

} // namespace

SearchReport case2_search(const SearchTask &task) {
  const auto t0 = std::chrono::steady_clock::now();
  const GroupTable &g = *task.group;
  require(task.pattern.size() == 3 || task.pattern.size() == 4,
          "case 2 pattern has three or four factors");
  require(pattern_product(task.pattern) == g.order(), "pattern product differs from |G|");
  require(task.first.has_value() || task.last.has_value(), "case 2 needs at least one anchor");

  const bool forward = task.first && task.first->is_subgroup();
  if (!forward && task.last && task.last->is_subgroup()) {
    // Search D C^-1 B^-1 A^-1 and reverse what it finds.
    SearchTask rev = task;
    rev.pattern.assign(task.pattern.rbegin(), task.pattern.rend());
    rev.first = task.last;
    rev.last.reset();
    if (task.first)
      rev.last = Anchor::of(inverse_set(g, task.first->set));
    SearchReport rep = case2_search(rev);
    for (auto &c : rep.solutions)
      c = reversed_cert(c);
    std::sort(rep.solutions.begin(), rep.solutions.end());
    rep.note = "searched the reversed task";
    return finish(std::move(rep), t0);
  }
  require(forward, "case 2 needs a subgroup anchor at one end");
  const Subgroup &a = *task.first->subgroup;

  if (task.last) {
    SearchReport rep = case2_forward(task, a, task.last->set);
    return finish(std::move(rep), t0);
  }

  // No end set given: try {e, d} over even-order d, order 4 first.
  require(task.pattern.back() == 2, "without a last anchor the last factor must have size 2");
  SearchReport total;
  total.strategy = Strategy::Case2;
  total.mode = task.mode;
  Budget budget(task.limits.budget_seconds);
  for (Elem dx : two_element_end_candidates(g, task.prefer_order4)) {
    if (budget.expired()) {
      total.exhaustive = false;
      total.budget_hit = true;
      break;
    }
    FactorSet d(g.order(), {0, dx});
    if (!product_distinct(g, a.members(), d))
      continue;
    SearchTask sub = task;
    sub.last = Anchor::of(d);
    sub.limits.budget_seconds = std::max(1e-3, task.limits.budget_seconds - budget.elapsed());
    SearchReport r = case2_forward(sub, a, d);
    total.candidates += r.candidates;
    total.predicted_candidates += r.predicted_candidates;
    total.product_checks += r.product_checks;
    total.outer_iterations += r.outer_iterations;
    total.nodes += r.nodes;
    total.budget_hit = total.budget_hit || r.budget_hit;
    total.solution_count += r.solution_count;
    for (auto &c : r.solutions)
      total.solutions.push_back(std::move(c));
    if (!r.exhaustive)
      total.exhaustive = false;
    if (task.mode != SearchMode::FindAll && !total.solutions.empty()) {
      total.note = "d = " + g.element(dx).to_cycles();
      total.exhaustive = false;
      break;
    }
  }
  std::sort(total.solutions.begin(), total.solutions.end());
  if (task.limits.max_solutions && total.solutions.size() > task.limits.max_solutions)
    total.solutions.resize(task.limits.max_solutions);
  return finish(std::move(total), t0);
}

CompatibilityGraph case3_build_graph(const Subgroup &a, const FactorSet &b, const FactorSet &d) {
  const GroupTable &g = a.parent();
  auto s = product_distinct(g, a.members(), b);
  const std::size_t m = a.order() * b.size() * d.size();
  if (!s || !product_distinct(g, *s, d))
    throw Error(ErrorCode::PrefixCollision, "|ABD| is smaller than |A|·|B|·|D|");
  CompatibilityGraph out;
  out.m = m;
  for (std::size_t x = 0; x < g.order(); ++x) {
    auto blk = block(g, s->elements(), static_cast<Elem>(x), d.elements());
    if (!blk)
      continue;
    out.vertices.push_back(static_cast<Elem>(x));
    out.blocks.push_back(std::move(*blk));
  }
  out.graph = UndirectedGraph(out.vertices.size());
  for (std::size_t i = 0; i < out.vertices.size(); ++i)
    for (std::size_t j = i + 1; j < out.vertices.size(); ++j)
      if (out.blocks[i].intersects(out.blocks[j]))
        out.graph.add_edge(i, j);
  return out;
}

SearchReport case3_search(const SearchTask &task) {
  const auto t0 = std::chrono::steady_clock::now();
  const GroupTable &g = *task.group;
  require(task.first && task.first->is_subgroup() && task.last,
          "case 3 needs a subgroup first and a set last");
  require(task.pattern.size() == 4, "case 3 pattern has four factors");
  require(pattern_product(task.pattern) == g.order(), "pattern product differs from |G|");
  const Subgroup &a = *task.first->subgroup;
  const FactorSet &d = task.last->set;
  require(task.pattern[0] == a.order() && task.pattern[3] == d.size(),
          "anchor sizes do not match the pattern");
  require(d.contains(0), "the set anchor must contain the identity");
  require(product_distinct(g, a.members(), d).has_value(),
          "the cosets Ax, x in D, are not distinct");
  const std::size_t b_size = task.pattern[1], s_target = task.pattern[2];

  SearchReport rep;
  rep.strategy = Strategy::Case3;
  rep.mode = task.mode;
  const auto w = free_right_reps(a, d.elements());
  rep.predicted_candidates = case3_formula(g.order(), a.order(), b_size, d.size());
  const auto b_choices = detail::subsets(w, b_size - 1);
  Budget budget(task.limits.budget_seconds);
  const bool find_all = task.mode == SearchMode::FindAll;

  detail::drive_units(
      b_choices.size(), task, budget,
      [&](std::size_t i, UnitResult &r) {
        ++r.candidates;
        const FactorSet bset = detail::with_identity(g.order(), b_choices[i]);
        CompatibilityGraph cg;
        try {
          cg = case3_build_graph(a, bset, d);
        } catch (const Error &) {
          return;
        }
        ++r.graph_builds;
        IndependentSetSearch search(cg.graph, s_target);
        search.set_blocks(cg.blocks, g.order());
        auto stats = search.run(
            [&](const std::vector<std::size_t> &set) {
              std::vector<Elem> cs;
              for (auto v : set)
                cs.push_back(cg.vertices[v]);
              ++r.product_checks;
              const bool ok = detail::record(make_cert(task.group, {a.members(), bset, FactorSet(g.order(), cs), d}),
                                    r, task.limits.max_solutions);
              return find_all || !ok;
            },
            &budget);
        r.nodes += stats.nodes;
        if (!stats.exhaustive && budget.was_hit() && (find_all || r.solutions.empty()))
          r.cut = true;
      },
      rep);
  return finish(std::move(rep), t0);
}

SearchReport run_search(const SearchTask &task) {
  switch (task.strategy) {
  case Strategy::Case1:
    return case1_search(task);
  case Strategy::Case2:
    return case2_search(task);
  case Strategy::Case3:
    return case3_search(task);
  case Strategy::Generic:
    return generic_search(task);
  }
  return generic_search(task);
}

} // namespace factorix
