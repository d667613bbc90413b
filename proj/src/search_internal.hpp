#pragma once

#include <algorithm>
#include <atomic>
#include <optional>
#include <span>
#include <vector>

#include "factorix/search.hpp"

namespace factorix::detail {

/// S·x·T as a bitset, or nullopt when two products coincide.
inline std::optional<Bitset> block(const GroupTable &g, std::span<const Elem> s, Elem x,
                                   std::span<const Elem> t) {
  Bitset out(g.order());
  for (Elem a : s) {
    const Elem ax = g.mul(a, x);
    for (Elem b : t)
      if (out.test_and_set(g.mul(ax, b)))
        return std::nullopt;
  }
  return out;
}

/// All k-subsets of `pool` in lexicographic order of positions.
inline std::vector<std::vector<Elem>> subsets(const std::vector<Elem> &pool, std::size_t k) {
  std::vector<std::vector<Elem>> out;
  for_each_combination(pool.size(), k, [&](const std::vector<std::size_t> &idx) {
    std::vector<Elem> s;
    for (auto i : idx)
      s.push_back(pool[i]);
    out.push_back(std::move(s));
    return true;
  });
  return out;
}

inline FactorSet with_identity(std::size_t order, std::vector<Elem> rest) {
  rest.push_back(0);
  return FactorSet(order, std::move(rest));
}

struct UnitResult {
  std::vector<Certificate> solutions;
  std::uint64_t found = 0; ///< verified solutions, stored or not
  std::uint64_t candidates = 0;
  std::uint64_t product_checks = 0;
  std::uint64_t graph_builds = 0;
  std::uint64_t nodes = 0;
  bool ran = false;
  bool cut = false; ///< stopped by the budget part-way
};

/// Runs unit(i, result, stop_flag) for every outer index and folds the
/// results into `report` deterministically: in find-first mode only units
/// up to the least index with a solution count, whatever the thread
/// interleaving was.
template <class Unit>
void drive_units(std::size_t n, const SearchTask &task, const Budget &budget, Unit &&unit,
                 SearchReport &report) {
  const bool first_only = task.mode != SearchMode::FindAll;
  std::vector<UnitResult> results(n);
  std::atomic<std::size_t> best{n};
  parallel_for(n, resolve_threads(task.limits.threads), [&](std::size_t i) {
    if (first_only && i > best.load())
      return;
    if (budget.expired()) {
      results[i].cut = true;
      return;
    }
    unit(i, results[i]);
    results[i].ran = true;
    if (first_only && !results[i].solutions.empty()) {
      std::size_t cur = best.load();
      while (i < cur && !best.compare_exchange_weak(cur, i)) {
      }
    }
  });

  const std::size_t limit = first_only ? std::min(best.load(), n ? n - 1 : 0) : (n ? n - 1 : 0);
  bool complete = true;
  for (std::size_t i = 0; i < n && i <= limit; ++i) {
    const auto &r = results[i];
    report.candidates += r.candidates;
    report.product_checks += r.product_checks;
    report.graph_builds += r.graph_builds;
    report.nodes += r.nodes;
    if (!first_only)
      report.solution_count += r.found;
    report.outer_iterations += r.ran ? 1 : 0;
    if (!r.ran || r.cut)
      complete = false;
    if (first_only) {
      if (i == best.load() && !r.solutions.empty())
        report.solutions.push_back(r.solutions.front());
    } else {
      for (const auto &c : r.solutions)
        report.solutions.push_back(c);
    }
  }
  report.budget_hit = budget.was_hit() && !complete;
  // A find-first run that stopped at a solution has not covered the space.
  report.exhaustive = complete && !(first_only && !report.solutions.empty());
  std::sort(report.solutions.begin(), report.solutions.end());
  if (first_only)
    report.solution_count = report.solutions.size();
  if (task.limits.max_solutions && report.solutions.size() > task.limits.max_solutions)
    report.solutions.resize(task.limits.max_solutions);
}

/// Records a verified solution; keeps at most `cap` per unit (0 = all).
inline bool record(Certificate c, UnitResult &r, std::size_t cap) {
  if (!verify_certificate(c))
    return false;
  ++r.found;
  if (cap == 0 || r.solutions.size() < cap)
    r.solutions.push_back(std::move(c));
  return true;
}

} // namespace factorix::detail
