#include "factorix/independent_set.hpp"

#include <algorithm>

namespace factorix {

UndirectedGraph::UndirectedGraph(std::size_t n) : adj_(n, Bitset(n)) {}

void UndirectedGraph::add_edge(std::size_t u, std::size_t v) {
  if (u == v)
    return;
  adj_[u].set(v);
  adj_[v].set(u);
}

std::size_t UndirectedGraph::edge_count() const {
  std::size_t twice = 0;
  for (const auto &a : adj_)
    twice += a.count();
  return twice / 2;
}

bool is_independent(const UndirectedGraph &g, const std::vector<std::size_t> &set) {
  for (std::size_t i = 0; i < set.size(); ++i)
    for (std::size_t j = i + 1; j < set.size(); ++j)
      if (set[i] == set[j] || g.adjacent(set[i], set[j]))
        return false;
  return true;
}

std::vector<std::size_t> greedy_independent_set(const UndirectedGraph &g) {
  Bitset alive(g.size());
  alive.set_all();
  for (;;) {
    std::size_t worst = g.size(), worst_deg = 0;
    alive.for_each([&](std::size_t v) {
      const std::size_t d = g.neighbours(v).count_and(alive);
      if (d > worst_deg) {
        worst_deg = d;
        worst = v;
      }
    });
    if (worst == g.size())
      break;
    alive.reset(worst);
  }
  std::vector<std::size_t> out;
  alive.for_each([&](std::size_t v) { out.push_back(v); });
  return out;
}

std::size_t clique_cover_bound(const UndirectedGraph &g, const Bitset &candidates) {
  Bitset rest = candidates;
  std::size_t cliques = 0;
  for (std::size_t v = rest.find_first(); v < rest.size(); v = rest.find_first()) {
    ++cliques;
    rest.reset(v);
    Bitset cand = rest;
    cand &= g.neighbours(v);
    for (std::size_t u = cand.find_first(); u < cand.size(); u = cand.find_first()) {
      rest.reset(u);
      cand.reset(u);
      cand &= g.neighbours(u);
    }
  }
  return cliques;
}

IndependentSetSearch::IndependentSetSearch(const UndirectedGraph &g, std::size_t target)
    : g_(g), target_(target) {}

void IndependentSetSearch::set_blocks(std::vector<Bitset> blocks, std::size_t universe,
                                      Bitset precovered) {
  // Covering-mode branching is only sound when a solution must tile the
  // rest of the universe exactly.
  if (precovered.size() != universe)
    precovered = Bitset(universe);
  if (blocks.size() != g_.size() || blocks.empty())
    return;
  const std::size_t m = blocks.front().count();
  for (const auto &b : blocks)
    if (b.count() != m)
      return;
  if (m * target_ + precovered.count() != universe)
    return;
  blocks_ = std::move(blocks);
  universe_ = universe;
  precovered_ = std::move(precovered);
  holders_.assign(universe_, Bitset(g_.size()));
  for (std::size_t v = 0; v < blocks_.size(); ++v)
    blocks_[v].for_each([&](std::size_t p) { holders_[p].set(v); });
}

bool IndependentSetSearch::out_of_time() {
  if (budget_ && (stats_.nodes & 255) == 0 && budget_->expired()) {
    stats_.exhaustive = false;
    stop_ = true;
  }
  return stop_;
}

bool IndependentSetSearch::emit(std::vector<std::size_t> chosen) {
  std::sort(chosen.begin(), chosen.end());
  ++stats_.solutions;
  if (!(*visit_)(chosen)) {
    stop_ = true;
    stats_.exhaustive = false;
  }
  return !stop_;
}

bool IndependentSetSearch::branch_cover(Bitset &covered, Bitset &live,
                                        std::vector<std::size_t> &chosen) {
  if (chosen.size() == target_)
    return emit(chosen);
  ++stats_.nodes;
  if (out_of_time())
    return false;
  if (live.count() < target_ - chosen.size())
    return true;

  std::size_t best_point = universe_, best_count = SIZE_MAX;
  for (std::size_t p = 0; p < universe_; ++p) {
    if (covered.test(p))
      continue;
    const std::size_t c = holders_[p].count_and(live);
    if (c < best_count) {
      best_count = c;
      best_point = p;
      if (c <= 1)
        break;
    }
  }
  if (best_point == universe_ || best_count == 0)
    return true;
  Bitset best_vertices = holders_[best_point];
  best_vertices &= live;

  bool go_on = true;
  best_vertices.for_each([&](std::size_t v) {
    if (!go_on)
      return;
    Bitset next_live = live;
    next_live.subtract(g_.neighbours(v));
    next_live.reset(v);
    Bitset next_covered = covered;
    next_covered |= blocks_[v];
    chosen.push_back(v);
    go_on = branch_cover(next_covered, next_live, chosen);
    chosen.pop_back();
  });
  return go_on;
}

bool IndependentSetSearch::branch_plain(Bitset &live, std::vector<std::size_t> &chosen) {
  if (chosen.size() == target_)
    return emit(chosen);
  ++stats_.nodes;
  if (out_of_time())
    return false;
  const std::size_t needed = target_ - chosen.size();
  if (live.count() < needed || clique_cover_bound(g_, live) < needed)
    return true;

  std::size_t pick = live.size(), pick_deg = 0;
  live.for_each([&](std::size_t v) {
    const std::size_t d = g_.neighbours(v).count_and(live);
    if (pick == live.size() || d > pick_deg) {
      pick = v;
      pick_deg = d;
    }
  });

  Bitset with = live;
  with.subtract(g_.neighbours(pick));
  with.reset(pick);
  chosen.push_back(pick);
  const bool go_on = branch_plain(with, chosen);
  chosen.pop_back();
  if (!go_on)
    return false;
  Bitset without = live;
  without.reset(pick);
  return branch_plain(without, chosen);
}

IndependentSetStats IndependentSetSearch::run(const Visitor &visit, const Budget *budget) {
  visit_ = &visit;
  budget_ = budget;
  stats_ = {};
  stop_ = false;
  std::vector<std::size_t> chosen;
  Bitset live(g_.size());
  live.set_all();
  if (target_ == 0) {
    emit({});
  } else if (!blocks_.empty()) {
    for (std::size_t v = 0; v < blocks_.size(); ++v)
      if (blocks_[v].intersects(precovered_))
        live.reset(v);
    Bitset covered = precovered_;
    branch_cover(covered, live, chosen);
  } else {
    branch_plain(live, chosen);
  }
  return stats_;
}

std::vector<std::size_t> IndependentSetSearch::find_first(const Budget *budget) {
  // The greedy seed answers outright when it happens to be large enough.
  auto seed = greedy_independent_set(g_);
  if (seed.size() >= target_ && precovered_.none()) {
    seed.resize(target_);
    return seed;
  }
  std::vector<std::size_t> found;
  run(
      [&](const std::vector<std::size_t> &s) {
        found = s;
        return false;
      },
      budget);
  return found;
}

} // namespace factorix
