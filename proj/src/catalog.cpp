#include "factorix/catalog.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>

#include "factorix/error.hpp"
#include "factorix/json_io.hpp"

#ifndef FACTORIX_DEFAULT_CATALOG
#define FACTORIX_DEFAULT_CATALOG "data/catalog.json"
#endif

namespace factorix {

using ojson = nlohmann::ordered_json;

std::string to_string(EntryType t) {
  switch (t) {
  case EntryType::Explicit:
    return "explicit";
  case EntryType::Sandwich:
    return "sandwich";
  case EntryType::Lift:
    return "lift";
  case EntryType::Search:
    return "search";
  case EntryType::Refute:
    return "refute";
  case EntryType::Multifold:
    return "multifold";
  }
  return "?";
}

const Subgroup &CatalogGroup::subgroup(const std::string &name) const {
  for (const auto &[n, h] : subgroups)
    if (n == name)
      return h;
  throw Error(ErrorCode::UnknownId, "group " + id + " has no subgroup " + name);
}

namespace {

[[noreturn]] void bad(const std::string &where, const std::string &what) {
  throw Error(ErrorCode::ParseError, where + ": " + what);
}

std::vector<Elem> parse_elements(const GroupTable &g, const ojson &list,
                                 const std::string &where) {
  if (!list.is_array() || list.empty())
    bad(where, "expected a nonempty list of permutations");
  std::vector<Elem> out;
  for (const auto &s : list) {
    if (!s.is_string())
      bad(where, "permutations are cycle strings");
    const auto text = s.get<std::string>();
    if (Perm::max_point(text) > g.degree())
      throw Error(ErrorCode::ElementNotInGroup, where + ": " + text + " moves a point beyond degree " +
                                                    std::to_string(g.degree()));
    auto idx = g.find(Perm::parse(text, g.degree()));
    if (!idx)
      throw Error(ErrorCode::ElementNotInGroup, where + ": " + text);
    out.push_back(*idx);
  }
  return out;
}

FactorSet parse_set(const GroupTable &g, const ojson &list, const std::string &where) {
  auto elems = parse_elements(g, list, where);
  std::vector<Elem> sorted = elems;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    bad(where, "repeated element");
  return FactorSet(g.order(), std::move(elems));
}

std::vector<Word> parse_words(const ojson &j, const char *key) {
  std::vector<Word> out;
  if (j.contains(key))
    for (const auto &w : j.at(key))
      out.push_back(w.get<Word>());
  return out;
}

Strategy parse_strategy(const std::string &s, const std::string &where) {
  for (auto v : {Strategy::Case1, Strategy::Case2, Strategy::Case3, Strategy::Generic})
    if (to_string(v) == s)
      return v;
  bad(where, "unknown strategy " + s);
}

SearchMode parse_mode(const std::string &s, const std::string &where) {
  for (auto v : {SearchMode::FindFirst, SearchMode::FindAll, SearchMode::Refute})
    if (to_string(v) == s)
      return v;
  bad(where, "unknown mode " + s);
}

RefuteMethod parse_method(const std::string &s, const std::string &where) {
  if (s == "auto")
    return RefuteMethod::Auto;
  for (auto v : {RefuteMethod::Generic, RefuteMethod::CosetParity})
    if (to_string(v) == s)
      return v;
  bad(where, "unknown refutation method " + s);
}

EntryType parse_type(const std::string &s, const std::string &where) {
  for (auto v : {EntryType::Explicit, EntryType::Sandwich, EntryType::Lift, EntryType::Search,
                 EntryType::Refute, EntryType::Multifold})
    if (to_string(v) == s)
      return v;
  bad(where, "unknown entry type " + s);
}

CatalogGroup parse_group(const std::string &id, const ojson &j) {
  CatalogGroup out;
  out.id = id;
  try {
    json plain = json::parse(j.dump());
    out.group = group_from_json(plain);
  } catch (const nlohmann::json::exception &e) {
    bad("group " + id, e.what());
  }
  if (j.contains("order") && j.at("order").get<std::size_t>() != out.group->order())
    bad("group " + id, "stated order " + std::to_string(j.at("order").get<std::size_t>()) +
                           " but the generators give " + std::to_string(out.group->order()));
  if (j.contains("subgroups")) {
    for (const auto &[name, sj] : j.at("subgroups").items()) {
      const std::string where = "group " + id + " subgroup " + name;
      Subgroup h(out.group, parse_elements(*out.group, sj.at("generators"), where));
      if (sj.contains("order") && sj.at("order").get<std::size_t>() != h.order())
        bad(where, "stated order " + std::to_string(sj.at("order").get<std::size_t>()) +
                       " but the generators give " + std::to_string(h.order()));
      out.subgroups.emplace_back(name, std::move(h));
    }
  }
  if (j.contains("prime_index_lifts"))
    for (const auto &lj : j.at("prime_index_lifts")) {
      PrimeIndexLift lift{lj.at("subgroup").get<std::string>(), lj.value("multifold", false)};
      out.subgroup(lift.subgroup);
      out.prime_index_lifts.push_back(std::move(lift));
    }
  return out;
}

Anchor parse_anchor(const CatalogGroup &cg, const ojson &j, const std::string &where) {
  if (j.contains("subgroup"))
    return Anchor::of(cg.subgroup(j.at("subgroup").get<std::string>()));
  if (j.contains("set"))
    return Anchor::of(parse_set(*cg.group, j.at("set"), where));
  bad(where, "anchor needs \"subgroup\" or \"set\"");
}

} // namespace

Catalog Catalog::load(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorCode::ParseError, "cannot open catalog " + path.string());
  ojson doc;
  try {
    doc = ojson::parse(in);
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
  }
  return parse(doc);
}

Catalog Catalog::parse(const ojson &doc) {
  Catalog cat;
  try {
    for (const auto &[id, gj] : doc.at("groups").items())
      cat.groups_.push_back(parse_group(id, gj));

    for (const auto &[id, ej] : doc.at("entries").items()) {
      CatalogEntry e;
      e.id = id;
      const std::string where = "entry " + id;
      e.type = parse_type(ej.at("type").get<std::string>(), where);
      e.group_id = ej.at("group").get<std::string>();
      const CatalogGroup &cg = cat.group(e.group_id);
      e.group = cg.group;
      const GroupTable &g = *cg.group;
      if (ej.contains("pattern"))
        e.pattern = ej.at("pattern").get<std::vector<std::size_t>>();
      e.words = parse_words(ej, "words");
      e.a_words = parse_words(ej, "a_words");
      e.b_words = parse_words(ej, "b_words");
      if (ej.contains("table1_rows"))
        e.table1_rows = ej.at("table1_rows").get<std::vector<int>>();
      e.note = ej.value("note", "");
      e.budget_seconds = ej.value("budget", 60.0);
      if (ej.contains("expected"))
        e.expected = json::parse(ej.at("expected").dump());

      switch (e.type) {
      case EntryType::Explicit:
        for (const auto &fj : ej.at("factors")) {
          CatalogFactor f;
          if (fj.contains("subgroup")) {
            f.subgroup_id = fj.at("subgroup").get<std::string>();
            f.subgroup = cg.subgroup(*f.subgroup_id);
            f.set = f.subgroup->members();
          } else {
            f.set = parse_set(g, fj.at("set"), where);
          }
          if (fj.contains("parts")) {
            for (const auto &pj : fj.at("parts"))
              f.parts.push_back(parse_set(g, pj, where));
            FactorSet acc = f.parts.front();
            for (std::size_t i = 1; i < f.parts.size(); ++i) {
              auto next = product_distinct(g, acc, f.parts[i]);
              if (!next)
                bad(where, "factor parts do not multiply uniquely");
              acc = std::move(*next);
            }
            if (!(acc == f.set))
              bad(where, "factor parts do not multiply to the factor");
          }
          e.factors.push_back(std::move(f));
        }
        if (!e.pattern.empty()) {
          std::vector<std::size_t> sizes;
          for (const auto &f : e.factors)
            sizes.push_back(f.set.size());
          if (sizes != e.pattern)
            bad(where, "factor sizes differ from the stated pattern");
        }
        if (ej.contains("double_cosets")) {
          const auto &d = ej.at("double_cosets");
          e.a = d.at("a").get<std::string>();
          e.b = d.at("b").get<std::string>();
          e.double_cosets = d.at("count").get<std::size_t>();
        }
        break;
      case EntryType::Sandwich:
        e.a = ej.at("a").get<std::string>();
        e.b = ej.at("b").get<std::string>();
        cg.subgroup(e.a);
        cg.subgroup(e.b);
        if (ej.contains("double_cosets"))
          e.double_cosets = ej.at("double_cosets").get<std::size_t>();
        break;
      case EntryType::Lift:
        e.subgroup = ej.at("subgroup").get<std::string>();
        cg.subgroup(e.subgroup);
        break;
      case EntryType::Search:
        e.strategy = parse_strategy(ej.at("strategy").get<std::string>(), where);
        e.mode = parse_mode(ej.value("mode", std::string("find-all")), where);
        if (ej.contains("first"))
          e.first = parse_anchor(cg, ej.at("first"), where + " first");
        if (ej.contains("last"))
          e.last = parse_anchor(cg, ej.at("last"), where + " last");
        break;
      case EntryType::Refute:
        e.method = parse_method(ej.value("method", std::string("auto")), where);
        e.mode = SearchMode::Refute;
        break;
      case EntryType::Multifold:
        break;
      }
      cat.entries_.push_back(std::move(e));
    }
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::ParseError, std::string("catalog: ") + e.what());
  }
  return cat;
}

const CatalogGroup &Catalog::group(const std::string &id) const {
  for (const auto &g : groups_)
    if (g.id == id)
      return g;
  throw Error(ErrorCode::UnknownId, "no catalog group " + id);
}

const CatalogEntry &Catalog::entry(const std::string &id) const {
  for (const auto &e : entries_)
    if (e.id == id)
      return e;
  throw Error(ErrorCode::UnknownId, "no catalog entry " + id);
}

const CatalogGroup *Catalog::match(const GroupTable &g) const {
  if (!g.has_permutations())
    return nullptr;
  for (const auto &cg : groups_) {
    const GroupTable &h = *cg.group;
    if (h.order() != g.order() || h.degree() != g.degree())
      continue;
    // Equal order plus containment of the generators means equal groups.
    bool same = true;
    for (const auto &p : g.generators())
      if (!h.find(p)) {
        same = false;
        break;
      }
    if (same)
      return &cg;
  }
  return nullptr;
}

Certificate Catalog::certificate(const CatalogEntry &e) const {
  if (e.type != EntryType::Explicit)
    throw Error(ErrorCode::PreconditionFailed, e.id + " is not an explicit entry");
  Certificate c{e.group, {}};
  for (const auto &f : e.factors)
    c.factors.push_back(f.set);
  return c;
}

SearchTask Catalog::search_task(const CatalogEntry &e) const {
  SearchTask t;
  t.group = e.group;
  t.pattern = e.pattern;
  t.strategy = e.strategy;
  t.first = e.first;
  t.last = e.last;
  t.mode = e.mode;
  t.limits.budget_seconds = e.budget_seconds;
  return t;
}

std::filesystem::path default_catalog_path() {
  if (const char *env = std::getenv("FACTORIX_CATALOG"); env && *env)
    return env;
  return FACTORIX_DEFAULT_CATALOG;
}

} // namespace factorix
