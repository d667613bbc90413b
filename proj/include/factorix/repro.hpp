#pragma once

#include <string>
#include <vector>

#include "factorix/cascade.hpp"
#include "factorix/catalog.hpp"
#include "factorix/json_io.hpp"

namespace factorix {

/// One expectation of one catalog entry, replayed.
struct ReproRow {
  std::string id;
  std::string check;
  bool pass = false;
  json expected;
  json observed;
  double wall_seconds = 0.0;
};

struct ReproOptions {
  int threads = 0;
  /// Overrides every entry's budget when positive.
  double budget_seconds = 0.0;
  std::size_t generic_cap = kDefaultGenericCap;
};

/// Entries a scope names: "all", an entry id, an entry type, or a lemma id
/// such as "lemma-4.5", which also takes in its search and reversed entries.
/// Throws UnknownId when nothing matches.
std::vector<const CatalogEntry *> select_entries(const Catalog &catalog, const std::string &scope);

/// Replays the selected entries. "all" and "patterns" add the word-count
/// checks, which need no catalog data.
std::vector<ReproRow> run_repro(const Catalog &catalog, const std::string &scope,
                                const ReproOptions &options = {});

json repro_row_to_json(const ReproRow &row);

/// Removes every "wall_seconds" key, recursively.
json strip_timing(json j);

} // namespace factorix
