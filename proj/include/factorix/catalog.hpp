#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "factorix/certificate.hpp"
#include "factorix/patterns.hpp"
#include "factorix/search.hpp"

namespace factorix {

struct PrimeIndexLift {
  std::string subgroup;
  bool multifold = false;
};

struct CatalogGroup {
  std::string id;
  GroupPtr group;
  /// Named subgroups in file order; the cascade tries them in this order.
  std::vector<std::pair<std::string, Subgroup>> subgroups;
  std::vector<PrimeIndexLift> prime_index_lifts;

  const Subgroup &subgroup(const std::string &name) const;
};

/// One factor of an explicit entry. `parts`, when present, multiply to
/// `set` and give its finer factorization.
struct CatalogFactor {
  FactorSet set;
  std::optional<std::string> subgroup_id;
  std::optional<Subgroup> subgroup;
  std::vector<FactorSet> parts;
};

enum class EntryType { Explicit, Sandwich, Lift, Search, Refute, Multifold };

std::string to_string(EntryType t);

struct CatalogEntry {
  std::string id;
  EntryType type = EntryType::Explicit;
  std::string group_id;
  GroupPtr group;
  std::vector<std::size_t> pattern;
  std::vector<CatalogFactor> factors;
  std::vector<Word> words;
  std::vector<int> table1_rows;
  std::string note;

  // sandwich: A·T·B with the expected number of double cosets
  std::string a, b;
  std::optional<std::size_t> double_cosets;
  std::vector<Word> a_words, b_words;

  // lift: subgroup of prime index
  std::string subgroup;

  // search and refute
  Strategy strategy = Strategy::Generic;
  SearchMode mode = SearchMode::FindAll;
  std::optional<Anchor> first, last;
  RefuteMethod method = RefuteMethod::Auto;
  double budget_seconds = 60.0;
  nlohmann::json expected;
};

class Catalog {
public:
  /// Parses and resolves every entry. Throws ParseError, UnknownId or
  /// ElementNotInGroup.
  static Catalog load(const std::filesystem::path &path);
  static Catalog parse(const nlohmann::ordered_json &doc);

  const CatalogGroup &group(const std::string &id) const;
  const CatalogEntry &entry(const std::string &id) const;
  const std::vector<CatalogGroup> &groups() const noexcept { return groups_; }
  const std::vector<CatalogEntry> &entries() const noexcept { return entries_; }

  /// The catalog group with exactly the same elements as `g`, if any.
  const CatalogGroup *match(const GroupTable &g) const;

  /// Explicit entries as certificates (factors in catalog order).
  Certificate certificate(const CatalogEntry &e) const;
  /// A search task carrying the entry's anchors, pattern and budget.
  SearchTask search_task(const CatalogEntry &e) const;

private:
  std::vector<CatalogGroup> groups_;
  std::vector<CatalogEntry> entries_;
};

/// --catalog value, else $FACTORIX_CATALOG, else the checked-in data file.
std::filesystem::path default_catalog_path();

} // namespace factorix
