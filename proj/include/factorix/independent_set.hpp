#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "factorix/bitset.hpp"
#include "factorix/parallel.hpp"

namespace factorix {

class UndirectedGraph {
public:
  explicit UndirectedGraph(std::size_t n = 0);

  std::size_t size() const noexcept { return adj_.size(); }
  void add_edge(std::size_t u, std::size_t v);
  bool adjacent(std::size_t u, std::size_t v) const { return adj_[u].test(v); }
  const Bitset &neighbours(std::size_t v) const { return adj_[v]; }
  std::size_t degree(std::size_t v) const { return adj_[v].count(); }
  std::size_t edge_count() const;

private:
  std::vector<Bitset> adj_;
};

bool is_independent(const UndirectedGraph &g, const std::vector<std::size_t> &set);

/// Removes a vertex of largest remaining degree until no edges remain; the
/// survivors form an independent set. Ties go to the lowest index.
std::vector<std::size_t> greedy_independent_set(const UndirectedGraph &g);

/// Upper bound on an independent subset of `candidates`: the number of
/// cliques in a greedy clique cover.
std::size_t clique_cover_bound(const UndirectedGraph &g, const Bitset &candidates);

struct IndependentSetStats {
  std::uint64_t nodes = 0;
  std::uint64_t solutions = 0;
  bool exhaustive = true;
};

/// Exact branch and bound for independent sets of a given size.
///
/// When every vertex carries a block (a subset of a universe) and adjacency
/// means "blocks intersect", a set of size `target` whose blocks fill the
/// universe is found by branching on the uncovered point with the fewest
/// live candidates. Without blocks, the search branches on a highest-degree
/// candidate and prunes with a greedy clique cover.
class IndependentSetSearch {
public:
  using Visitor = std::function<bool(const std::vector<std::size_t> &)>;

  IndependentSetSearch(const UndirectedGraph &g, std::size_t target);

  /// Blocks of each vertex over a universe of `universe` points. Points in
  /// `precovered` are taken as already filled; vertices touching them are
  /// never chosen.
  void set_blocks(std::vector<Bitset> blocks, std::size_t universe, Bitset precovered = {});

  /// Calls `visit` with each independent set of size target (sorted); stops
  /// when it returns false or the budget expires.
  IndependentSetStats run(const Visitor &visit, const Budget *budget = nullptr);

  /// The greedy seed when it is large enough, otherwise the first solution
  /// in search order; empty when there is none.
  std::vector<std::size_t> find_first(const Budget *budget = nullptr);

private:
  bool branch_cover(Bitset &covered, Bitset &live, std::vector<std::size_t> &chosen);
  bool branch_plain(Bitset &live, std::vector<std::size_t> &chosen);
  bool emit(std::vector<std::size_t> chosen);
  bool out_of_time();

  const UndirectedGraph &g_;
  std::size_t target_;
  std::vector<Bitset> blocks_;
  std::vector<Bitset> holders_;
  Bitset precovered_;
  std::size_t universe_ = 0;
  const Visitor *visit_ = nullptr;
  const Budget *budget_ = nullptr;
  IndependentSetStats stats_;
  bool stop_ = false;
};

} // namespace factorix
