#include "cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <memory>

#include "CLI11.hpp"

#include "factorix/cascade.hpp"
#include "factorix/catalog.hpp"
#include "factorix/error.hpp"
#include "factorix/json_io.hpp"
#include "factorix/repro.hpp"

namespace factorix::cli {

namespace {

using Clock = std::chrono::steady_clock;

enum Exit { kOk = 0, kNegative = 1, kInputError = 2, kBudget = 3 };

struct Common {
  int threads = 0;
  double budget = 0.0;
  bool json_out = false;
  bool human = false;
  std::string catalog;
  std::size_t cap_generic = kDefaultGenericCap;
};

void add_common(CLI::App *app, Common &c) {
  app->add_option("--threads", c.threads, "worker threads, 0 for all cores");
  app->add_option("--budget", c.budget, "wall-clock budget in seconds");
  app->add_flag("--json", c.json_out, "JSON run report (default)");
  app->add_flag("--human", c.human, "cycle-notation listing");
  app->add_option("--catalog", c.catalog, "catalog file, else $FACTORIX_CATALOG");
  app->add_option("--cap-generic", c.cap_generic, "largest order handed to generic search");
}

double since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

json run_report(const std::string &command, json inputs, json outputs, double wall) {
  return json{{"tool", "factorix"},
              {"tool_version", kToolVersion},
              {"command", command},
              {"inputs", std::move(inputs)},
              {"outputs", std::move(outputs)},
              {"wall_seconds", wall}};
}

json read_json(const std::string &path) {
  try {
    if (path == "-")
      return json::parse(std::cin);
    std::ifstream in(path);
    if (!in)
      throw Error(ErrorCode::ParseError, "cannot open " + path);
    return json::parse(in);
  } catch (const json::exception &e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
}

std::unique_ptr<Catalog> load_catalog(const Common &c) {
  return std::make_unique<Catalog>(
      Catalog::load(c.catalog.empty() ? default_catalog_path() : std::filesystem::path(c.catalog)));
}

struct GroupRef {
  GroupPtr group;
  const CatalogGroup *cg = nullptr;
};

/// A catalog group id, or a JSON file holding {"degree", "generators"}.
GroupRef resolve_group(const Catalog &cat, const std::string &spec) {
  if (std::filesystem::is_regular_file(spec) || spec == "-") {
    json j = read_json(spec);
    GroupRef r;
    try {
      r.group = group_from_json(j.contains("group") ? j.at("group") : j);
    } catch (const json::exception &e) {
      throw Error(ErrorCode::ParseError, spec + ": " + e.what());
    }
    r.cg = cat.match(*r.group);
    return r;
  }
  const CatalogGroup &cg = cat.group(spec);
  return {cg.group, &cg};
}

std::string element_text(const GroupTable &g, Elem e) {
  return e == g.identity() ? "e" : g.element(e).to_cycles();
}

std::string factor_text(const GroupTable &g, const FactorSet &f) {
  std::string s = "{";
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i)
      s += ", ";
    if (!g.has_permutations()) {
      s += std::to_string(f.elements()[i]);
      continue;
    }
    s += element_text(g, f.elements()[i]);
  }
  return s + "}";
}

void print_certificate(std::ostream &out, const Certificate &c, const std::string &indent = "  ") {
  const auto p = c.pattern();
  out << indent << "pattern " << word_to_string(Word(p.begin(), p.end())) << "\n";
  for (std::size_t i = 0; i < c.factors.size(); ++i)
    out << indent << "A" << i + 1 << " = " << factor_text(*c.group, c.factors[i]) << "\n";
}

// verify ---------------------------------------------------------------

int cmd_verify(const std::string &path, const Common &c, std::ostream &out) {
  const auto t0 = Clock::now();
  json inputs{{"file", path}};
  Certificate cert;
  try {
    cert = certificate_from_json(read_json(path));
  } catch (const Error &e) {
    if (c.human)
      out << "MALFORMED " << e.what() << "\n";
    else
      out << run_report("verify", inputs, json{{"status", "malformed"}, {"error", e.what()}},
                        since(t0))
                 .dump(2)
          << "\n";
    return kInputError;
  }
  const Verdict v = verify_certificate(cert);
  if (c.human) {
    out << (v.valid ? "VALID" : "INVALID") << "\n";
    print_certificate(out, cert);
    if (!v.valid)
      out << "  " << v.detail << "\n";
  } else {
    json outputs{{"status", v.valid ? "valid" : "invalid"},
                 {"pattern", cert.pattern()},
                 {"normalized", cert.normalized()},
                 {"failing_prefix", v.failing_prefix},
                 {"detail", v.detail}};
    out << run_report("verify", inputs, outputs, since(t0)).dump(2) << "\n";
  }
  return v.valid ? kOk : kNegative;
}

// search ---------------------------------------------------------------

struct SearchArgs {
  std::string entry, group, strategy = "generic", first, last;
  std::vector<std::size_t> pattern;
  bool find_all = false;
  std::size_t max_solutions = 0;
};

Strategy strategy_from(const std::string &s) {
  for (auto v : {Strategy::Case1, Strategy::Case2, Strategy::Case3, Strategy::Generic})
    if (to_string(v) == s)
      return v;
  throw Error(ErrorCode::ParseError, "unknown strategy " + s);
}

json search_outputs(const SearchReport &r) {
  json sols = json::array();
  for (const auto &s : r.solutions)
    sols.push_back(certificate_to_json(s));
  return json{{"strategy", to_string(r.strategy)},
              {"mode", to_string(r.mode)},
              {"exhaustive", r.exhaustive},
              {"budget_hit", r.budget_hit},
              {"solution_count", r.solution_count},
              {"candidates", r.candidates},
              {"predicted_candidates", r.predicted_candidates},
              {"product_checks", r.product_checks},
              {"outer_iterations", r.outer_iterations},
              {"graph_builds", r.graph_builds},
              {"nodes", r.nodes},
              {"note", r.note},
              {"solutions", sols},
              {"wall_seconds", r.wall_seconds}};
}

int cmd_search_cascade(const SearchArgs &a, const Common &c, const Catalog &cat,
                       std::ostream &out) {
  const auto t0 = Clock::now();
  GroupRef g = resolve_group(cat, a.group);
  CascadeOptions co;
  co.threads = c.threads;
  co.generic_cap = c.cap_generic;
  if (c.budget > 0)
    co.budget_seconds = c.budget;
  Cascade cascade(g.group, &cat, co);
  const CascadeResult r = cascade.solve_pattern(a.pattern);
  json inputs{{"group", a.group}, {"pattern", a.pattern}, {"strategy", "cascade"}};
  if (c.human) {
    if (r.certificate) {
      out << "FOUND by " << r.step << "\n";
      for (const auto &t : r.trail)
        out << "  " << t << "\n";
      print_certificate(out, *r.certificate);
    } else {
      out << (r.budget_hit ? "UNKNOWN (budget)" : "NOT FOUND") << "\n";
      for (const auto &d : r.diagnostics)
        out << "  " << d << "\n";
    }
  } else {
    json outputs{{"found", r.certificate.has_value()},
                 {"step", r.step},
                 {"trail", r.trail},
                 {"diagnostics", r.diagnostics},
                 {"budget_hit", r.budget_hit},
                 {"certificate", r.certificate ? certificate_to_json(*r.certificate) : json()}};
    out << run_report("search", inputs, outputs, since(t0)).dump(2) << "\n";
  }
  if (r.certificate)
    return kOk;
  return r.budget_hit ? kBudget : kNegative;
}

int cmd_search(const SearchArgs &a, const Common &c, std::ostream &out) {
  const auto t0 = Clock::now();
  auto cat = load_catalog(c);
  SearchTask task;
  json inputs;
  if (!a.entry.empty()) {
    const CatalogEntry &e = cat->entry(a.entry);
    if (e.type != EntryType::Search)
      throw Error(ErrorCode::PreconditionFailed, a.entry + " is not a search entry");
    task = cat->search_task(e);
    inputs = json{{"entry", a.entry}};
  } else {
    if (a.group.empty() || a.pattern.empty())
      throw Error(ErrorCode::ParseError, "search needs --entry, or --group and --pattern");
    if (a.strategy == "cascade")
      return cmd_search_cascade(a, c, *cat, out);
    GroupRef g = resolve_group(*cat, a.group);
    task.group = g.group;
    task.pattern = a.pattern;
    task.strategy = strategy_from(a.strategy);
    task.mode = SearchMode::FindFirst;
    auto anchor = [&](const std::string &name) -> std::optional<Anchor> {
      if (name.empty())
        return std::nullopt;
      if (!g.cg)
        throw Error(ErrorCode::UnknownId, "anchors name catalog subgroups; the group is not in the catalog");
      return Anchor::of(g.cg->subgroup(name));
    };
    task.first = anchor(a.first);
    task.last = anchor(a.last);
    inputs = json{{"group", a.group}, {"pattern", a.pattern}, {"strategy", a.strategy}};
    if (!a.first.empty())
      inputs["first"] = a.first;
    if (!a.last.empty())
      inputs["last"] = a.last;
  }
  if (a.find_all)
    task.mode = SearchMode::FindAll;
  if (c.budget > 0)
    task.limits.budget_seconds = c.budget;
  task.limits.threads = c.threads;
  task.limits.max_solutions = a.max_solutions;
  task.generic_cap = c.cap_generic;
  inputs["mode"] = to_string(task.mode);
  inputs["max_solutions"] = a.max_solutions;

  const SearchReport r = run_search(task);
  if (c.human) {
    out << to_string(r.strategy) << " " << to_string(r.mode) << ": " << r.solution_count
        << " solution(s), " << r.candidates << " candidates"
        << (r.exhaustive ? ", exhaustive" : "") << (r.budget_hit ? ", budget hit" : "") << "\n";
    for (std::size_t i = 0; i < r.solutions.size(); ++i) {
      out << "solution " << i + 1 << "\n";
      print_certificate(out, r.solutions[i]);
    }
  } else {
    out << run_report("search", inputs, search_outputs(r), since(t0)).dump(2) << "\n";
  }
  if (r.solution_count > 0)
    return kOk;
  return r.budget_hit ? kBudget : kNegative;
}

// refute ---------------------------------------------------------------

struct RefuteArgs {
  std::string entry, group, method = "auto";
  std::vector<std::size_t> pattern;
};

RefuteMethod method_from(const std::string &s) {
  if (s == "auto")
    return RefuteMethod::Auto;
  for (auto v : {RefuteMethod::Generic, RefuteMethod::CosetParity})
    if (to_string(v) == s)
      return v;
  throw Error(ErrorCode::ParseError, "unknown refutation method " + s);
}

int cmd_refute(const RefuteArgs &a, const Common &c, std::ostream &out) {
  const auto t0 = Clock::now();
  auto cat = load_catalog(c);
  SearchTask task;
  RefuteMethod method;
  json inputs;
  if (!a.entry.empty()) {
    const CatalogEntry &e = cat->entry(a.entry);
    if (e.type != EntryType::Refute)
      throw Error(ErrorCode::PreconditionFailed, a.entry + " is not a refute entry");
    task = cat->search_task(e);
    method = e.method;
    inputs = json{{"entry", a.entry}};
  } else {
    if (a.group.empty() || a.pattern.empty())
      throw Error(ErrorCode::ParseError, "refute needs --entry, or --group and --pattern");
    task.group = resolve_group(*cat, a.group).group;
    task.pattern = a.pattern;
    task.mode = SearchMode::Refute;
    method = method_from(a.method);
    inputs = json{{"group", a.group}, {"pattern", a.pattern}};
  }
  if (c.budget > 0)
    task.limits.budget_seconds = c.budget;
  task.limits.threads = c.threads;
  task.generic_cap = std::max(c.cap_generic, task.group->order());
  inputs["method"] = method == RefuteMethod::Auto ? "auto" : to_string(method);

  const RefutationRecord r = refute(task, method);
  if (c.human) {
    out << to_string(r.verdict) << " (" << to_string(r.method) << ", " << r.searched
        << " searched)\n";
    if (!r.detail.empty())
      out << "  " << r.detail << "\n";
    if (r.witness)
      print_certificate(out, *r.witness);
  } else {
    json outputs{{"verdict", to_string(r.verdict)},
                 {"method", to_string(r.method)},
                 {"searched", r.searched},
                 {"nodes", r.nodes},
                 {"pruned", r.pruned},
                 {"detail", r.detail},
                 {"witness", r.witness ? certificate_to_json(*r.witness) : json()},
                 {"wall_seconds", r.wall_seconds}};
    out << run_report("refute", inputs, outputs, since(t0)).dump(2) << "\n";
  }
  switch (r.verdict) {
  case RefuteVerdict::None:
    return kOk;
  case RefuteVerdict::Found:
    return kNegative;
  case RefuteVerdict::Unknown:
    break;
  }
  return kBudget;
}

// patterns -------------------------------------------------------------

int cmd_patterns(std::uint64_t n, const std::vector<std::uint64_t> &discard, bool asserted,
                 const Common &c, std::ostream &out) {
  PatternPlan plan = make_plan(n);
  for (auto p : discard)
    plan = prime_index_discard(std::move(plan), p, asserted);
  if (c.human) {
    out << "n = " << plan.n << ", omega = " << plan.omega << ", " << plan.classes.size()
        << " classes\n";
    for (const auto &w : plan.classes)
      out << "  " << word_to_string(w) << "\n";
    for (const auto &d : plan.discarded)
      out << "  discarded " << word_to_string(d.word) << ": " << d.reason << "\n";
    return kOk;
  }
  json discarded = json::array();
  for (const auto &d : plan.discarded)
    discarded.push_back(json{{"word", d.word}, {"reason", d.reason}});
  nlohmann::ordered_json j;
  j["n"] = plan.n;
  j["omega"] = plan.omega;
  j["classes"] = plan.classes;
  j["discarded"] = nlohmann::ordered_json::parse(discarded.dump());
  out << j.dump(2) << "\n";
  return kOk;
}

// multifold ------------------------------------------------------------

int cmd_multifold(const std::string &group, const Common &c, std::ostream &out) {
  const auto t0 = Clock::now();
  auto cat = load_catalog(c);
  GroupRef g = resolve_group(*cat, group);
  CascadeOptions co;
  co.threads = c.threads;
  co.generic_cap = c.cap_generic;
  if (c.budget > 0)
    co.budget_seconds = c.budget;
  const MultifoldReport r = multifold(g.group, cat.get(), co);

  if (c.human) {
    out << r.verdict() << " " << r.certified << "/" << r.classes.size() << " classes, |G| = "
        << r.order << "\n";
    for (const auto &cs : r.classes) {
      out << word_to_string(cs.word) << "  " << (cs.certified ? cs.result.step : "uncertified");
      if (!cs.discard_reason.empty())
        out << "  [" << cs.discard_reason << "]";
      out << "\n";
      for (const auto &t : cs.result.trail)
        out << "    " << t << "\n";
      if (cs.result.certificate)
        print_certificate(out, *cs.result.certificate, "    ");
    }
  } else {
    json classes = json::array();
    for (const auto &cs : r.classes) {
      json jc{{"word", cs.word},
              {"certified", cs.certified},
              {"step", cs.result.step},
              {"trail", cs.result.trail},
              {"diagnostics", cs.result.diagnostics},
              {"budget_hit", cs.result.budget_hit},
              {"certificate",
               cs.result.certificate ? certificate_to_json(*cs.result.certificate) : json()}};
      if (!cs.discard_reason.empty())
        jc["discard_reason"] = cs.discard_reason;
      classes.push_back(std::move(jc));
    }
    json outputs{{"verdict", r.verdict()},
                 {"order", r.order},
                 {"omega", r.omega},
                 {"certified", r.certified},
                 {"class_count", r.classes.size()},
                 {"budget_hit", r.budget_hit},
                 {"classes", classes}};
    out << run_report("multifold", json{{"group", group}}, outputs, since(t0)).dump(2) << "\n";
  }
  if (r.complete())
    return kOk;
  return r.budget_hit ? kBudget : kNegative;
}

// repro ----------------------------------------------------------------

std::string short_json(const json &j) {
  std::string s = j.is_string() ? j.get<std::string>() : j.dump();
  return s.size() > 60 ? s.substr(0, 57) + "..." : s;
}

int cmd_repro(const std::string &scope, const Common &c, std::ostream &out) {
  const auto t0 = Clock::now();
  auto cat = load_catalog(c);
  ReproOptions ro;
  ro.threads = c.threads;
  ro.budget_seconds = c.budget;
  ro.generic_cap = c.cap_generic;
  const auto rows = run_repro(*cat, scope, ro);
  std::size_t failed = 0;
  for (const auto &r : rows)
    failed += r.pass ? 0 : 1;

  if (c.human) {
    for (const auto &r : rows) {
      json obs = r.observed;
      if (obs.is_object())
        obs.erase("detail");
      out << (r.pass ? "PASS " : "FAIL ") << std::left << std::setw(20) << r.id << " "
          << std::setw(28) << r.check << " expected " << short_json(r.expected) << ", observed "
          << short_json(obs) << "\n";
    }
    out << rows.size() - failed << "/" << rows.size() << " checks passed\n";
  } else {
    json checks = json::array();
    for (const auto &r : rows)
      checks.push_back(repro_row_to_json(r));
    json outputs{{"checks", checks},
                 {"passed", rows.size() - failed},
                 {"failed", failed}};
    out << run_report("repro", json{{"scope", scope}}, outputs, since(t0)).dump(2) << "\n";
  }
  return failed ? kNegative : kOk;
}

} // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Search, verify and count multiset factorizations of finite groups", "factorix"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  Common common;

  std::string verify_file;
  auto *verify = app.add_subcommand("verify", "check a certificate file (\"-\" for stdin)");
  verify->add_option("file", verify_file, "certificate JSON")->required();
  add_common(verify, common);

  SearchArgs sa;
  auto *search = app.add_subcommand("search", "run a catalog search entry or a pattern search");
  search->add_option("--entry", sa.entry, "catalog search entry id");
  search->add_option("--group", sa.group, "catalog group id or group JSON file");
  search->add_option("--pattern", sa.pattern, "factor sizes, e.g. 6,7,2,2")->delimiter(',');
  search->add_option("--strategy", sa.strategy, "case1, case2, case3, generic or cascade");
  search->add_option("--first", sa.first, "catalog subgroup fixed as the first factor");
  search->add_option("--last", sa.last, "catalog subgroup fixed as the last factor");
  search->add_flag("--find-all", sa.find_all, "enumerate every solution");
  search->add_option("--max-solutions", sa.max_solutions, "solutions kept in the report, 0 for all");
  add_common(search, common);

  RefuteArgs ra;
  auto *refute_cmd = app.add_subcommand("refute", "prove that no factorization has the pattern");
  refute_cmd->add_option("--entry", ra.entry, "catalog refute entry id");
  refute_cmd->add_option("--group", ra.group, "catalog group id or group JSON file");
  refute_cmd->add_option("--pattern", ra.pattern, "factor sizes, e.g. 2,3,2")->delimiter(',');
  refute_cmd->add_option("--method", ra.method,
                         "auto, normalized-backtracking or coset-parity");
  add_common(refute_cmd, common);

  std::uint64_t n = 1;
  std::vector<std::uint64_t> discard;
  bool asserted = false;
  auto *patterns = app.add_subcommand("patterns", "prime words of n up to reversal");
  patterns->add_option("n", n, "group order")->required()->check(CLI::PositiveNumber);
  patterns->add_option("--discard", discard,
                       "prime index of a multifold-factorizable subgroup")
      ->delimiter(',');
  patterns->add_flag("--assert-multifold", asserted,
                     "assert the subgroups behind --discard are multifold-factorizable");
  add_common(patterns, common);

  std::string mf_group;
  auto *mf = app.add_subcommand("multifold", "certify every prime pattern of a group");
  mf->add_option("group", mf_group, "catalog group id or group JSON file")->required();
  add_common(mf, common);

  std::string scope = "all";
  auto *repro = app.add_subcommand("repro", "replay catalog entries against their expectations");
  repro->add_option("scope", scope, "all, an entry id, an entry type or a lemma id");
  add_common(repro, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }
  if (common.json_out && common.human) {
    err << "--json and --human are exclusive\n";
    return kInputError;
  }

  try {
    if (*verify)
      return cmd_verify(verify_file, common, out);
    if (*search)
      return cmd_search(sa, common, out);
    if (*refute_cmd)
      return cmd_refute(ra, common, out);
    if (*patterns)
      return cmd_patterns(n, discard, asserted, common, out);
    if (*mf)
      return cmd_multifold(mf_group, common, out);
    if (*repro)
      return cmd_repro(scope, common, out);
  } catch (const Error &e) {
    err << "factorix: " << e.what() << "\n";
    return e.code() == ErrorCode::AllStrategiesFailed ? kNegative : kInputError;
  } catch (const std::exception &e) {
    err << "factorix: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

} // namespace factorix::cli
