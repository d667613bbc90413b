#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "factorix/certificate.hpp"
#include "factorix/independent_set.hpp"
#include "factorix/parallel.hpp"
#include "factorix/structure.hpp"

namespace factorix {

enum class Strategy { Case1, Case2, Case3, Generic };
enum class SearchMode { FindFirst, FindAll, Refute };

std::string to_string(Strategy s);
std::string to_string(SearchMode m);

/// A fixed end factor: a set, and the subgroup it is when it is one.
struct Anchor {
  FactorSet set;
  std::optional<Subgroup> subgroup;

  static Anchor of(const Subgroup &h) { return Anchor{h.members(), h}; }
  static Anchor of(FactorSet s) { return Anchor{std::move(s), std::nullopt}; }
  bool is_subgroup() const { return subgroup.has_value(); }
};

struct SearchLimits {
  std::size_t max_solutions = 0; ///< solutions kept in the report; 0 keeps all
  double budget_seconds = 1800.0;
  int threads = 0; ///< 0 means all cores
};

inline constexpr std::size_t kDefaultGenericCap = 60;

struct SearchTask {
  GroupPtr group;
  std::vector<std::size_t> pattern;
  Strategy strategy = Strategy::Generic;
  std::optional<Anchor> first;
  std::optional<Anchor> last;
  SearchLimits limits;
  SearchMode mode = SearchMode::FindAll;
  /// Generic search: require the first enumerated factor to meet a
  /// conjugacy-class representative. Ignored in find-all mode.
  bool symmetry_break = true;
  /// Case 2 without a last anchor: try two-element end factors {e,d} with
  /// d of order 4 before other even orders.
  bool prefer_order4 = true;
  std::size_t generic_cap = kDefaultGenericCap;
};

struct SearchReport {
  Strategy strategy = Strategy::Generic;
  SearchMode mode = SearchMode::FindAll;
  std::vector<Certificate> solutions; ///< canonically sorted, at most max_solutions
  std::uint64_t solution_count = 0;   ///< all verified solutions found
  std::uint64_t candidates = 0;       ///< size of the candidate space covered
  std::uint64_t predicted_candidates = 0;
  std::uint64_t product_checks = 0;
  std::uint64_t outer_iterations = 0;
  std::uint64_t graph_builds = 0;
  std::uint64_t nodes = 0;
  bool exhaustive = true;
  bool budget_hit = false;
  double wall_seconds = 0.0;
  std::string note;
};

/// Candidate-space formulas for the anchored searches.
std::uint64_t case1_formula(std::size_t order, std::size_t a, std::size_t b, std::size_t c,
                            std::size_t d);
std::uint64_t case2_formula(std::size_t order, std::size_t a, std::size_t b, std::size_t c,
                            std::size_t d);
std::uint64_t case3_formula(std::size_t order, std::size_t a, std::size_t b, std::size_t d);

/// A and D subgroups; pattern (|A|, b, c, |D|). B' ranges over W' and C'
/// over V', the transversals with the cosets met by D (resp. A) removed.
SearchReport case1_search(const SearchTask &task);

/// Subgroup A first and set D last, pattern (|A|, b, c, |D|) or
/// (|A|, b, |D|). When only the last anchor is a subgroup the reversed task
/// is searched and its results reversed.
SearchReport case2_search(const SearchTask &task);

struct CompatibilityGraph {
  std::vector<Elem> vertices;
  UndirectedGraph graph;
  std::vector<Bitset> blocks; ///< A·B·x·D for each vertex
  std::size_t m = 0;
};

/// Vertices x with |ABxD| = m, edges between intersecting blocks.
/// Throws PrefixCollision when |ABD| < |A|·|B|·|D|.
CompatibilityGraph case3_build_graph(const Subgroup &a, const FactorSet &b, const FactorSet &d);

/// Subgroup A first, set D last, pattern (|A|, b, s, |D|).
SearchReport case3_search(const SearchTask &task);

/// Normalized backtracking over all factors; the largest factor is solved
/// as an exact cover once the others are fixed.
SearchReport generic_search(const SearchTask &task);

/// Dispatches on task.strategy.
SearchReport run_search(const SearchTask &task);

enum class RefuteVerdict { None, Found, Unknown };
enum class RefuteMethod { Auto, Generic, CosetParity };

std::string to_string(RefuteVerdict v);
std::string to_string(RefuteMethod m);

struct RefutationRecord {
  RefuteVerdict verdict = RefuteVerdict::Unknown;
  RefuteMethod method = RefuteMethod::Generic;
  std::uint64_t searched = 0; ///< leaves or (a, c) pairs examined
  std::uint64_t nodes = 0;
  std::uint64_t pruned = 0;
  std::optional<Certificate> witness;
  double wall_seconds = 0.0;
  std::string detail;
};

/// Exhaustive nonexistence check. Auto uses the coset-parity reduction for
/// (2, m, 2) patterns and normalized backtracking otherwise. A budget hit
/// yields Unknown, never None.
RefutationRecord refute(const SearchTask &task, RefuteMethod method = RefuteMethod::Auto);

/// Elements d != e with |<d>| even, order-4 elements first when asked.
std::vector<Elem> two_element_end_candidates(const GroupTable &g, bool prefer_order4);

} // namespace factorix
