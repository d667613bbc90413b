#include <algorithm>
#include <chrono>
#include <functional>
#include <string>

#include "factorix/error.hpp"
#include "search_internal.hpp"

namespace factorix {

using detail::block;
using detail::UnitResult;

namespace {

/// One side of the growing product: its elements and their bitset.
struct Side {
  std::vector<Elem> elems;
  Bitset bits;
};

class GenericEngine {
public:
  GenericEngine(const SearchTask &task, const Budget &budget)
      : task_(task), g_(*task.group), budget_(budget), k_(task.pattern.size()) {
    fixed_.resize(k_);
    if (task.first)
      fixed_[0] = task.first->set;
    if (task.last)
      fixed_[k_ - 1] = task.last->set;
    for (std::size_t i = 0; i < k_; ++i)
      if (fixed_[i] && (fixed_[i]->size() != task.pattern[i] || !fixed_[i]->contains(0)))
        throw Error(ErrorCode::AnchorInvalid,
                    "fixed factors must match the pattern and contain the identity");

    pivot_ = k_;
    for (std::size_t i = 0; i < k_; ++i)
      if (!fixed_[i] && (pivot_ == k_ || task.pattern[i] > task.pattern[pivot_]))
        pivot_ = i;
    for (std::size_t i = 0; i < pivot_ && i < k_; ++i)
      if (!fixed_[i])
        order_.push_back(i);
    for (std::size_t i = k_; i-- > pivot_ + 1;)
      if (!fixed_[i])
        order_.push_back(i);

    // Fixed ends fold into the products before anything is enumerated.
    prefix0_ = identity_side();
    suffix0_ = identity_side();
    if (fixed_[0])
      prefix0_ = grow(prefix0_, *fixed_[0], true).value_or(Side{});
    if (k_ > 1 && fixed_[k_ - 1])
      suffix0_ = grow(suffix0_, *fixed_[k_ - 1], false).value_or(Side{});

    symmetry_ = task.symmetry_break && task.mode != SearchMode::FindAll && !task.first &&
                !task.last;
    if (symmetry_)
      for (Elem r : conjugacy_class_representatives(g_))
        if (r != 0)
          class_reps_.push_back(r);
    find_all_ = task.mode == SearchMode::FindAll;
  }

  std::size_t pivot() const { return pivot_; }

  /// Choices for the first factor in enumeration order; every unit starts
  /// from one of them.
  std::vector<FactorSet> first_choices() {
    std::vector<FactorSet> out;
    if (order_.empty())
      return out;
    const std::size_t pos = order_.front();
    if (prefix0_.elems.empty() || suffix0_.elems.empty())
      return out;
    UnitResult scratch;
    enumerate(pos, pos < pivot_ ? prefix0_ : suffix0_, scratch, [&](const FactorSet &f, const Side &) {
      out.push_back(f);
      return true;
    });
    return out;
  }

  bool has_units() const { return !order_.empty(); }

  void run_unit(const FactorSet *first, UnitResult &r) {
    std::vector<FactorSet> factors(k_);
    for (std::size_t i = 0; i < k_; ++i)
      if (fixed_[i])
        factors[i] = *fixed_[i];
    Side prefix = prefix0_, suffix = suffix0_;
    if (prefix.elems.empty() || suffix.elems.empty())
      return;
    std::size_t step = 0;
    if (first) {
      const std::size_t pos = order_.front();
      factors[pos] = *first;
      auto next = grow(pos < pivot_ ? prefix : suffix, *first, pos < pivot_);
      if (!next)
        return;
      (pos < pivot_ ? prefix : suffix) = std::move(*next);
      step = 1;
    }
    rec(step, prefix, suffix, factors, r);
  }

private:
  Side identity_side() const {
    Side s{{0}, Bitset(g_.order())};
    s.bits.set(0);
    return s;
  }

  /// prefix·F (on the left side) or F·suffix (on the right side).
  std::optional<Side> grow(const Side &base, const FactorSet &f, bool left) const {
    Side out{{}, Bitset(g_.order())};
    for (Elem x : f.elements())
      for (Elem p : base.elems) {
        const Elem y = left ? g_.mul(p, x) : g_.mul(x, p);
        if (out.bits.test_and_set(y))
          return std::nullopt;
        out.elems.push_back(y);
      }
    std::sort(out.elems.begin(), out.elems.end());
    return out;
  }

  /// Enumerates normalized factors at `pos` whose translates of `base`
  /// stay disjoint; calls visit(factor, grown side).
  template <class Visit>
  bool enumerate(std::size_t pos, const Side &base, UnitResult &r, Visit &&visit) {
    const bool left = pos < pivot_;
    const std::size_t size = task_.pattern[pos];
    const bool end = pos == 0 || pos == k_ - 1;
    const bool needs_rep = symmetry_ && !order_.empty() && pos == order_.front();
    std::vector<Elem> chosen{0};
    Bitset covered = base.bits;
    std::function<bool(std::size_t)> rec_elem = [&](std::size_t from) -> bool {
      if (chosen.size() == size) {
        FactorSet f(g_.order(), chosen);
        if (end && !divisibility_prune(g_, f, pos == 0 ? EndPosition::First : EndPosition::Last))
          return true;
        if (needs_rep && !std::any_of(class_reps_.begin(), class_reps_.end(),
                                      [&](Elem c) { return f.contains(c); }))
          return true;
        auto grown = grow(base, f, left);
        if (!grown)
          return true;
        return visit(f, *grown);
      }
      if ((++r.nodes & 1023) == 0 && budget_.expired()) {
        r.cut = true;
        return false;
      }
      for (std::size_t x = from; x + (size - chosen.size()) <= g_.order(); ++x) {
        Bitset add(g_.order());
        bool clash = false;
        for (Elem p : base.elems) {
          const Elem y = left ? g_.mul(p, static_cast<Elem>(x)) : g_.mul(static_cast<Elem>(x), p);
          if (covered.test(y) || add.test_and_set(y)) {
            clash = true;
            break;
          }
        }
        if (clash)
          continue;
        Bitset saved = covered;
        covered |= add;
        chosen.push_back(static_cast<Elem>(x));
        const bool go_on = rec_elem(x + 1);
        chosen.pop_back();
        covered = std::move(saved);
        if (!go_on)
          return false;
      }
      return true;
    };
    return rec_elem(1);
  }

  bool rec(std::size_t step, const Side &prefix, const Side &suffix,
           std::vector<FactorSet> &factors, UnitResult &r) {
    if (step == order_.size())
      return solve_pivot(prefix, suffix, factors, r);
    const std::size_t pos = order_[step];
    const bool left = pos < pivot_;
    return enumerate(pos, left ? prefix : suffix, r, [&](const FactorSet &f, const Side &grown) {
      factors[pos] = f;
      return left ? rec(step + 1, grown, suffix, factors, r)
                  : rec(step + 1, prefix, grown, factors, r);
    });
  }

  bool solve_pivot(const Side &prefix, const Side &suffix, std::vector<FactorSet> &factors,
                   UnitResult &r) {
    ++r.candidates;
    const std::size_t s = task_.pattern[pivot_];
    auto base = block(g_, prefix.elems, 0, suffix.elems);
    if (!base)
      return true;
    if (base->count() * s != g_.order())
      return true;
    std::vector<Elem> verts;
    std::vector<Bitset> blocks;
    for (std::size_t x = 1; x < g_.order(); ++x) {
      auto b = block(g_, prefix.elems, static_cast<Elem>(x), suffix.elems);
      if (b && !b->intersects(*base)) {
        verts.push_back(static_cast<Elem>(x));
        blocks.push_back(std::move(*b));
      }
    }
    ++r.product_checks;
    UndirectedGraph graph(verts.size());
    for (std::size_t i = 0; i < verts.size(); ++i)
      for (std::size_t j = i + 1; j < verts.size(); ++j)
        if (blocks[i].intersects(blocks[j]))
          graph.add_edge(i, j);
    ++r.graph_builds;
    IndependentSetSearch search(graph, s - 1);
    search.set_blocks(std::move(blocks), g_.order(), *base);
    bool keep_going = true;
    auto stats = search.run(
        [&](const std::vector<std::size_t> &set) {
          std::vector<Elem> xs{0};
          for (auto v : set)
            xs.push_back(verts[v]);
          factors[pivot_] = FactorSet(g_.order(), xs);
          Certificate c{task_.group, factors};
          if (detail::record(std::move(c), r, task_.limits.max_solutions)) {
            if (!find_all_)
              keep_going = false;
          }
          return keep_going;
        },
        &budget_);
    r.nodes += stats.nodes;
    if (!stats.exhaustive && keep_going) {
      r.cut = true;
      return false;
    }
    return keep_going;
  }

  const SearchTask &task_;
  const GroupTable &g_;
  const Budget &budget_;
  std::size_t k_;
  std::size_t pivot_ = 0;
  std::vector<std::optional<FactorSet>> fixed_;
  std::vector<std::size_t> order_;
  Side prefix0_, suffix0_;
  std::vector<Elem> class_reps_;
  bool symmetry_ = false;
  bool find_all_ = false;
};

} // namespace

SearchReport generic_search(const SearchTask &task) {
  const auto t0 = std::chrono::steady_clock::now();
  const GroupTable &g = *task.group;
  if (g.order() > task.generic_cap)
    throw Error(ErrorCode::PreconditionFailed,
                "|G| = " + std::to_string(g.order()) + " exceeds the generic search cap " +
                    std::to_string(task.generic_cap));
  std::size_t product = 1;
  for (auto m : task.pattern) {
    if (m < 1)
      throw Error(ErrorCode::AnchorInvalid, "pattern entries must be positive");
    product *= m;
  }
  if (task.pattern.empty() || product != g.order())
    throw Error(ErrorCode::AnchorInvalid, "pattern product differs from |G|");

  SearchReport rep;
  rep.strategy = Strategy::Generic;
  rep.mode = task.mode;
  Budget budget(task.limits.budget_seconds);

  if (task.pattern.size() == 1) {
    rep.solutions.push_back(whole_group_certificate(task.group));
    rep.solution_count = 1;
    rep.candidates = 1;
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
  }

  GenericEngine engine(task, budget);
  if (!engine.has_units()) {
    detail::drive_units(
        1, task, budget, [&](std::size_t, UnitResult &r) { engine.run_unit(nullptr, r); }, rep);
  } else {
    const auto firsts = engine.first_choices();
    detail::drive_units(
        firsts.size(), task, budget,
        [&](std::size_t i, UnitResult &r) { engine.run_unit(&firsts[i], r); }, rep);
  }
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

std::string to_string(RefuteVerdict v) {
  switch (v) {
  case RefuteVerdict::None:
    return "NONE";
  case RefuteVerdict::Found:
    return "FOUND";
  case RefuteVerdict::Unknown:
    return "UNKNOWN";
  }
  return "?";
}

std::string to_string(RefuteMethod m) {
  switch (m) {
  case RefuteMethod::Auto:
    return "auto";
  case RefuteMethod::Generic:
    return "normalized-backtracking";
  case RefuteMethod::CosetParity:
    return "coset-parity";
  }
  return "?";
}

namespace {

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

RefutationRecord refute_generic(const SearchTask &task) {
  SearchTask t = task;
  t.mode = SearchMode::Refute;
  t.strategy = Strategy::Generic;
  const SearchReport rep = generic_search(t);
  RefutationRecord rec;
  rec.method = RefuteMethod::Generic;
  rec.searched = rep.candidates;
  rec.nodes = rep.nodes;
  if (!rep.solutions.empty()) {
    rec.verdict = RefuteVerdict::Found;
    rec.witness = rep.solutions.front();
  } else if (rep.exhaustive) {
    rec.verdict = RefuteVerdict::None;
  } else {
    rec.verdict = RefuteVerdict::Unknown;
    rec.detail = "budget exhausted";
  }
  return rec;
}

/// For G = {e,a}·B·{e,c} with a an involution, S = {e,a}B is a union of
/// right <a>-cosets, and G = S ⊔ Sc. Right multiplication by c permutes
/// those cosets, and such an S exists iff every cycle has even length.
RefutationRecord refute_coset_parity(const SearchTask &task) {
  const GroupTable &g = *task.group;
  const auto &p = task.pattern;
  if (p.size() != 3 || p[0] != 2 || p[2] != 2 || 4 * p[1] != g.order())
    throw Error(ErrorCode::PreconditionFailed, "coset parity needs a (2, m, 2) pattern");
  Budget budget(task.limits.budget_seconds);
  RefutationRecord rec;
  rec.method = RefuteMethod::CosetParity;
  bool unknown = false;

  for (Elem a : conjugacy_class_representatives(g)) {
    if (a == 0 || g.element_order(a) % 2 != 0)
      continue;
    if (g.element_order(a) != 2) {
      // Not an involution: fall back to a search with {e, a} fixed first.
      SearchTask sub = task;
      sub.first = Anchor::of(FactorSet(g.order(), {0, a}));
      sub.last.reset();
      sub.mode = SearchMode::Refute;
      sub.limits.budget_seconds = std::max(1e-3, task.limits.budget_seconds - budget.elapsed());
      const SearchReport r = generic_search(sub);
      rec.searched += r.candidates;
      rec.nodes += r.nodes;
      if (!r.solutions.empty()) {
        rec.verdict = RefuteVerdict::Found;
        rec.witness = r.solutions.front();
        return rec;
      }
      if (!r.exhaustive)
        unknown = true;
      continue;
    }
    Subgroup h(task.group, {a});
    const auto reps = right_transversal(h);
    const auto index = right_coset_index(h, reps);
    for (std::size_t cx = 1; cx < g.order(); ++cx) {
      if (budget.expired()) {
        unknown = true;
        break;
      }
      const Elem c = static_cast<Elem>(cx);
      if (g.element_order(c) % 2 != 0)
        continue;
      ++rec.searched;
      std::vector<std::size_t> image(reps.size());
      for (std::size_t i = 0; i < reps.size(); ++i)
        image[i] = index[g.mul(reps[i], c)];
      std::vector<int> colour(reps.size(), -1);
      bool even = true;
      // Start with the identity's coset so that e lands in S.
      for (std::size_t start = 0; start < reps.size() && even; ++start) {
        if (colour[start] != -1)
          continue;
        std::size_t len = 0, i = start;
        int col = 1;
        do {
          colour[i] = col;
          col ^= 1;
          i = image[i];
          ++len;
        } while (i != start);
        even = len % 2 == 0;
      }
      if (!even) {
        ++rec.pruned;
        continue;
      }
      std::vector<Elem> b;
      for (std::size_t i = 0; i < reps.size(); ++i)
        if (colour[i] == 1)
          b.push_back(reps[i]);
      Certificate w{task.group,
                    {FactorSet(g.order(), {0, a}), FactorSet(g.order(), b),
                     FactorSet(g.order(), {0, c})}};
      if (verify_certificate(w)) {
        rec.verdict = RefuteVerdict::Found;
        rec.witness = std::move(w);
        return rec;
      }
      rec.detail = "parity witness failed verification";
      unknown = true;
    }
  }
  rec.verdict = unknown ? RefuteVerdict::Unknown : RefuteVerdict::None;
  if (unknown && rec.detail.empty())
    rec.detail = "budget exhausted";
  return rec;
}

} // namespace

RefutationRecord refute(const SearchTask &task, RefuteMethod method) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto &p = task.pattern;
  if (method == RefuteMethod::Auto)
    method = p.size() == 3 && p[0] == 2 && p[2] == 2 ? RefuteMethod::CosetParity
                                                     : RefuteMethod::Generic;
  RefutationRecord rec =
      method == RefuteMethod::CosetParity ? refute_coset_parity(task) : refute_generic(task);
  rec.wall_seconds = since(t0);
  return rec;
}

} // namespace factorix
