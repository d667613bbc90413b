#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "factorix/catalog.hpp"
#include "factorix/certificate.hpp"
#include "factorix/patterns.hpp"
#include "factorix/search.hpp"

namespace factorix {

struct CascadeOptions {
  double budget_seconds = 1800.0;     ///< whole solve
  double step_budget_seconds = 60.0;  ///< any single search inside it
  std::size_t generic_cap = kDefaultGenericCap;
  int threads = 0;
};

struct CascadeResult {
  std::optional<Certificate> certificate;
  /// Step that produced the certificate: trivial, catalog, sandwich, lift,
  /// anchored or generic.
  std::string step;
  std::vector<std::string> trail;       ///< how the certificate was assembled
  std::vector<std::string> diagnostics; ///< why earlier steps failed
  bool budget_hit = false;
};

/// Tries, in order: catalog certificates refined to the word, sandwiches
/// A·T·B over catalog subgroups, transversal and quotient lifts, the
/// catalog's anchored searches, and generic search. Every step is tried on
/// the word and then on its reverse. Sub-certificates are cached, so one
/// Cascade should serve all words of a group.
class Cascade {
public:
  Cascade(GroupPtr group, const Catalog *catalog, CascadeOptions options = {});

  const GroupPtr &group() const noexcept { return group_; }
  const CatalogGroup *catalog_group() const noexcept { return cg_; }

  /// A certificate whose pattern is the prime word `word`.
  CascadeResult solve(const Word &word);

  /// Any pattern: refines composite entries to primes, solves, then merges
  /// adjacent factors back.
  CascadeResult solve_pattern(const std::vector<std::size_t> &pattern);

  /// The explicit catalog entry refined to `word`, subgroup factors by
  /// generic search and listed parts as given.
  std::optional<Certificate> refine_entry(const CatalogEntry &e, const Word &word,
                                          std::vector<std::string> &trail);

  /// Certificate of h, over subgroup_table(h), with pattern `word`.
  std::optional<Certificate> subgroup_certificate(const Subgroup &h, const Word &word);

private:
  struct Coarse {
    std::vector<CatalogFactor> factors;
    std::string origin;
  };

  std::optional<Certificate> refine(const Coarse &c, const Word &word,
                                    std::vector<std::string> &trail);
  std::optional<Certificate> step_catalog(const Word &w, std::vector<std::string> &trail);
  std::optional<Certificate> step_sandwich(const Word &w, std::vector<std::string> &trail);
  std::optional<Certificate> step_lift(const Word &w, std::vector<std::string> &trail);
  std::optional<Certificate> step_anchored(const Word &w, std::vector<std::string> &trail);
  std::optional<Certificate> quotient_certificate(const Subgroup &n, const Word &word);
  std::optional<Certificate> step_generic(const Word &w, std::vector<std::string> &trail,
                                          bool &budget_hit);
  const std::vector<Coarse> &anchored_solutions();
  double remaining(double cap) const;

  GroupPtr group_;
  const Catalog *catalog_;
  const CatalogGroup *cg_ = nullptr;
  CascadeOptions opt_;
  Budget budget_;
  std::map<std::pair<std::vector<Elem>, Word>, std::optional<Certificate>> sub_cache_;
  std::map<std::pair<std::vector<Elem>, Word>, std::optional<Certificate>> quotient_cache_;
  std::map<std::pair<std::size_t, std::size_t>, bool> condition_cache_;
  std::optional<std::vector<Coarse>> anchored_;
};

/// One-shot cascade; throws AllStrategiesFailed with the diagnostics.
CascadeResult strategy_cascade(const GroupPtr &group, const Word &word, const Catalog *catalog,
                               CascadeOptions options = {});

struct ClassStatus {
  Word word;
  bool certified = false;
  std::string discard_reason; ///< set when a prime-index lift licenses the class
  CascadeResult result;
};

struct MultifoldReport {
  std::uint64_t order = 1;
  int omega = 0;
  std::vector<ClassStatus> classes;
  std::size_t certified = 0;
  bool budget_hit = false;
  double wall_seconds = 0.0;

  bool complete() const { return certified == classes.size(); }
  /// MULTIFOLD-CERTIFIED or INCOMPLETE.
  std::string verdict() const;
};

/// Certifies every reversal class of prime words of |G|. Classes a
/// catalog prime-index lift licenses are still given explicit certificates.
MultifoldReport multifold(const GroupPtr &group, const Catalog *catalog,
                          CascadeOptions options = {});

} // namespace factorix
