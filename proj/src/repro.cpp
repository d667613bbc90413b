#include "factorix/repro.hpp"

#include <chrono>
#include <map>
#include <memory>
#include <set>

#include "factorix/error.hpp"

namespace factorix {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

json word_json(const Word &w) { return json(w); }

bool scope_matches(const CatalogEntry &e, const std::string &scope) {
  if (scope == "all" || scope == e.id || scope == to_string(e.type))
    return true;
  const std::string lemma = "lemma-";
  if (scope.rfind(lemma, 0) == 0) {
    const std::string num = scope.substr(lemma.size());
    return e.id == "search-" + num || e.id == scope + "-reversed";
  }
  return false;
}

class Runner {
public:
  Runner(const Catalog &catalog, const ReproOptions &opt) : catalog_(catalog), opt_(opt) {}

  void run(const CatalogEntry &e) {
    switch (e.type) {
    case EntryType::Explicit:
      explicit_entry(e);
      break;
    case EntryType::Sandwich:
      sandwich_entry(e);
      break;
    case EntryType::Lift:
      lift_entry(e);
      break;
    case EntryType::Search:
      search_entry(e);
      break;
    case EntryType::Refute:
      refute_entry(e);
      break;
    case EntryType::Multifold:
      multifold_entry(e);
      break;
    }
  }

  void pattern_counts() {
    for (auto [n, classes] : {std::pair<std::uint64_t, std::uint64_t>{168, 10}, {360, 30}}) {
      const auto t0 = Clock::now();
      const auto got = reversal_class_count(n);
      const auto listed = enumerate_reversal_classes(n).size();
      add("patterns", "reversal classes of " + std::to_string(n), got == classes && listed == classes,
          classes, json{{"formula", got}, {"enumerated", listed}}, t0);
    }
  }

  std::vector<ReproRow> rows;

private:
  double budget(const CatalogEntry &e) const {
    return opt_.budget_seconds > 0 ? opt_.budget_seconds : e.budget_seconds;
  }

  Cascade &cascade(const CatalogEntry &e) {
    auto it = cascades_.find(e.group_id);
    if (it == cascades_.end()) {
      CascadeOptions co;
      co.threads = opt_.threads;
      co.generic_cap = opt_.generic_cap;
      if (opt_.budget_seconds > 0)
        co.budget_seconds = opt_.budget_seconds;
      it = cascades_
               .emplace(e.group_id,
                        std::make_unique<Cascade>(e.group, &catalog_, co))
               .first;
    }
    return *it->second;
  }

  void add(const std::string &id, const std::string &check, bool pass, json expected,
           json observed, Clock::time_point t0) {
    rows.push_back({id, check, pass, std::move(expected), std::move(observed), since(t0)});
  }

  void word_row(const CatalogEntry &e, const Word &w, const std::optional<Certificate> &c,
                Clock::time_point t0) {
    json obs = nullptr;
    bool pass = false;
    if (c) {
      const auto v = verify_certificate(*c);
      const auto p = c->pattern();
      pass = v.valid && Word(p.begin(), p.end()) == w;
      obs = json{{"valid", v.valid}, {"pattern", p}};
    }
    add(e.id, "word " + word_to_string(w), pass, word_json(w), obs, t0);
  }

  void rows_row(const CatalogEntry &e, std::size_t words) {
    if (e.table1_rows.empty())
      return;
    add(e.id, "table rows", words == e.table1_rows.size(), e.table1_rows.size(), words,
        Clock::now());
  }

  void explicit_entry(const CatalogEntry &e) {
    auto t0 = Clock::now();
    const Certificate c = catalog_.certificate(e);
    const auto v = verify_certificate(c);
    const bool unique_all = count_unique_products(c) == e.group->order();
    add(e.id, "verify", v.valid && unique_all && c.pattern() == e.pattern, json(e.pattern),
        json{{"valid", v.valid}, {"brute_force_unique", unique_all}, {"pattern", c.pattern()}},
        t0);
    if (e.double_cosets) {
      t0 = Clock::now();
      const auto &cg = catalog_.group(e.group_id);
      const auto s = double_cosets(cg.subgroup(e.a), cg.subgroup(e.b)).representatives.size();
      add(e.id, "double cosets " + e.a + "," + e.b, s == *e.double_cosets, *e.double_cosets, s,
          t0);
    }
    for (const auto &w : e.words) {
      t0 = Clock::now();
      std::vector<std::string> trail;
      word_row(e, w, cascade(e).refine_entry(e, w, trail), t0);
    }
    rows_row(e, e.words.size());
  }

  void sandwich_entry(const CatalogEntry &e) {
    const auto &cg = catalog_.group(e.group_id);
    const Subgroup &a = cg.subgroup(e.a);
    const Subgroup &b = cg.subgroup(e.b);
    auto t0 = Clock::now();
    const auto s = double_cosets(a, b).representatives.size();
    if (e.double_cosets)
      add(e.id, "double cosets " + e.a + "," + e.b, s == *e.double_cosets, *e.double_cosets, s,
          t0);
    t0 = Clock::now();
    const bool cond = conjugate_intersection_trivial(a, b);
    add(e.id, "conjugates meet trivially", cond, true, cond, t0);

    const auto aw = e.a_words.empty() ? enumerate_words(a.order()) : e.a_words;
    const auto bw = e.b_words.empty() ? enumerate_words(b.order()) : e.b_words;
    std::vector<std::pair<Word, Word>> splits;
    if (!e.words.empty()) {
      const std::size_t la = prime_factors(a.order()).size();
      const std::size_t mid = s > 1 ? 1 : 0;
      for (const auto &w : e.words)
        if (w.size() >= la + mid)
          splits.emplace_back(Word(w.begin(), w.begin() + la), Word(w.begin() + la + mid, w.end()));
    } else {
      for (const auto &x : aw)
        for (const auto &y : bw)
          splits.emplace_back(x, y);
    }
    for (const auto &[x, y] : splits) {
      t0 = Clock::now();
      Word w = x;
      if (s > 1)
        w.push_back(s);
      w.insert(w.end(), y.begin(), y.end());
      std::optional<Certificate> c;
      if (cond) {
        auto ca = cascade(e).subgroup_certificate(a, x);
        auto cb = cascade(e).subgroup_certificate(b, y);
        if (ca && cb)
          c = compose_sandwich(a, *ca, b, *cb);
      }
      word_row(e, w, c, t0);
    }
    rows_row(e, splits.size());
  }

  void lift_entry(const CatalogEntry &e) {
    const Subgroup &h = catalog_.group(e.group_id).subgroup(e.subgroup);
    const std::uint64_t index = e.group->order() / h.order();
    for (const auto &w : e.words) {
      const auto t0 = Clock::now();
      std::optional<Certificate> c;
      if (w.back() == index) {
        if (auto sc = cascade(e).subgroup_certificate(h, Word(w.begin(), w.end() - 1)))
          c = lift_by_transversal(*sc, h, Side::Right);
      } else if (w.front() == index) {
        if (auto sc = cascade(e).subgroup_certificate(h, Word(w.begin() + 1, w.end())))
          c = lift_by_transversal(*sc, h, Side::Left);
      }
      word_row(e, w, c, t0);
    }
  }

  void search_entry(const CatalogEntry &e) {
    SearchTask task = catalog_.search_task(e);
    task.limits.threads = opt_.threads;
    task.limits.budget_seconds = budget(e);
    task.generic_cap = opt_.generic_cap;
    const auto t0 = Clock::now();
    const SearchReport r = run_search(task);
    const double secs = since(t0);
    bool all_valid = true;
    std::set<FactorSet> second;
    for (const auto &c : r.solutions) {
      all_valid = all_valid && verify_certificate(c).valid;
      if (c.factors.size() > 1)
        second.insert(c.factors[1]);
    }
    json common{{"strategy", to_string(r.strategy)},
                {"exhaustive", r.exhaustive},
                {"budget_hit", r.budget_hit},
                {"solutions_verified", all_valid}};
    const json &x = e.expected;
    auto row = [&](const std::string &check, bool pass, json expected, json observed) {
      observed["detail"] = common;
      rows.push_back({e.id, check, pass && all_valid, std::move(expected), std::move(observed),
                      secs});
    };
    if (x.contains("solutions")) {
      const auto want = x.at("solutions").get<std::uint64_t>();
      row("solutions", r.exhaustive && r.solution_count == want, want,
          json{{"count", r.solution_count}, {"distinct_second_factor", second.size()}});
    }
    if (x.contains("candidates")) {
      const auto want = x.at("candidates").get<std::uint64_t>();
      row("candidates", r.candidates == want, want,
          json{{"count", r.candidates}, {"formula", r.predicted_candidates}});
    }
    if (x.contains("min_solutions")) {
      const auto want = x.at("min_solutions").get<std::uint64_t>();
      row("solutions", r.solution_count >= want, json{{"at_least", want}},
          json{{"count", r.solution_count}});
    }
    if (x.contains("max_graph_builds")) {
      const auto cap = x.at("max_graph_builds").get<std::uint64_t>();
      row("graph builds", r.graph_builds <= cap, json{{"at_most", cap}},
          json{{"count", r.graph_builds}});
    }
  }

  void refute_entry(const CatalogEntry &e) {
    SearchTask task = catalog_.search_task(e);
    task.limits.threads = opt_.threads;
    task.limits.budget_seconds = budget(e);
    task.generic_cap = std::max(opt_.generic_cap, e.group->order());
    const auto t0 = Clock::now();
    const RefutationRecord r = refute(task, e.method);
    const auto want = e.expected.get<std::string>();
    json obs{{"verdict", to_string(r.verdict)},
             {"method", to_string(r.method)},
             {"searched", r.searched}};
    if (r.witness)
      obs["witness_valid"] = verify_certificate(*r.witness).valid;
    const bool witness_ok = !r.witness || verify_certificate(*r.witness).valid;
    add(e.id, "verdict", to_string(r.verdict) == want && witness_ok, want, obs, t0);
  }

  void multifold_entry(const CatalogEntry &e) {
    CascadeOptions co;
    co.threads = opt_.threads;
    co.generic_cap = opt_.generic_cap;
    co.budget_seconds = budget(e);
    const auto t0 = Clock::now();
    const MultifoldReport r = multifold(e.group, &catalog_, co);
    const auto want = e.expected.at("classes").get<std::size_t>();
    add(e.id, "classes certified", r.complete() && r.classes.size() == want,
        json{{"classes", want}, {"verdict", "MULTIFOLD-CERTIFIED"}},
        json{{"classes", r.classes.size()}, {"certified", r.certified}, {"verdict", r.verdict()}},
        t0);
  }

  const Catalog &catalog_;
  ReproOptions opt_;
  std::map<std::string, std::unique_ptr<Cascade>> cascades_;
};

} // namespace

std::vector<const CatalogEntry *> select_entries(const Catalog &catalog, const std::string &scope) {
  std::vector<const CatalogEntry *> out;
  for (const auto &e : catalog.entries())
    if (scope_matches(e, scope))
      out.push_back(&e);
  if (out.empty() && scope != "patterns")
    throw Error(ErrorCode::UnknownId, "no catalog entry matches " + scope);
  return out;
}

std::vector<ReproRow> run_repro(const Catalog &catalog, const std::string &scope,
                                const ReproOptions &options) {
  const auto entries = select_entries(catalog, scope);
  Runner runner(catalog, options);
  if (scope == "all" || scope == "patterns")
    runner.pattern_counts();
  for (const auto *e : entries)
    runner.run(*e);
  return std::move(runner.rows);
}

json repro_row_to_json(const ReproRow &row) {
  return json{{"id", row.id},
              {"check", row.check},
              {"status", row.pass ? "PASS" : "FAIL"},
              {"expected", row.expected},
              {"observed", row.observed},
              {"wall_seconds", row.wall_seconds}};
}

json strip_timing(json j) {
  if (j.is_object()) {
    j.erase("wall_seconds");
    for (auto &[k, v] : j.items())
      v = strip_timing(std::move(v));
  } else if (j.is_array()) {
    for (auto &v : j)
      v = strip_timing(std::move(v));
  }
  return j;
}

} // namespace factorix
