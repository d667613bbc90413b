#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "factorix/catalog.hpp"
#include "factorix/json_io.hpp"
#include "factorix/repro.hpp"
#include "support.hpp"

using namespace factorix;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "factorix");
  std::vector<const char *> argv;
  for (const auto &a : args)
    argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string &name, const json &j) {
  const auto path = std::filesystem::temp_directory_path() / ("factorix_cli_" + name + ".json");
  std::ofstream(path) << j.dump();
  return path.string();
}

json lemma_certificate() {
  const Catalog cat = Catalog::load(default_catalog_path());
  return certificate_to_json(cat.certificate(cat.entry("lemma-3.3")));
}

} // namespace

TEST_CASE("verify exit codes") {
  json good = lemma_certificate();
  CHECK(run({"verify", write_temp("good", good)}).code == 0);

  json missing = good;
  missing["factors"][1].erase(missing["factors"][1].size() - 1);
  CHECK(run({"verify", write_temp("missing", missing)}).code == 2);

  CHECK(run({"verify", "/nonexistent/file.json"}).code == 2);

  // Swaps between factors: the exit code follows the brute-force count.
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 12; ++trial) {
    json swapped = good;
    const std::size_t i = rng() % 4, j = (i + 1 + rng() % 3) % 4;
    auto &fi = swapped["factors"][i];
    auto &fj = swapped["factors"][j];
    std::swap(fi[rng() % fi.size()], fj[rng() % fj.size()]);
    Certificate c;
    try {
      c = certificate_from_json(swapped);
    } catch (const Error &) {
      CHECK(run({"verify", write_temp("swap", swapped)}).code == 2);
      continue;
    }
    const bool unique = count_unique_products(c) == c.group->order();
    CHECK(run({"verify", write_temp("swap", swapped)}).code == (unique ? 0 : 1));
  }
}

TEST_CASE("verify reports as JSON by default and cycles on request") {
  const std::string path = write_temp("good", lemma_certificate());
  const Run j = run({"verify", path});
  const json report = json::parse(j.out);
  CHECK(report.at("command") == "verify");
  CHECK(report.at("outputs").at("status") == "valid");
  CHECK(report.contains("tool_version"));
  const Run h = run({"verify", path, "--human"});
  CHECK(h.out.rfind("VALID", 0) == 0);
  CHECK(h.out.find("A4 = {e, ") != std::string::npos);
  CHECK(run({"verify", path, "--human", "--json"}).code == 2);
}

TEST_CASE("patterns emits the plan") {
  const Run r = run({"patterns", "168", "--discard", "7", "--assert-multifold"});
  REQUIRE(r.code == 0);
  const json plan = json::parse(r.out);
  CHECK(plan.at("n") == 168);
  CHECK(plan.at("omega") == 5);
  CHECK(plan.at("classes").size() == 6);
  CHECK(plan.at("discarded").size() == 4);
  CHECK(plan.at("discarded")[0].contains("reason"));
  CHECK(run({"patterns", "168", "--discard", "7"}).code == 2);
}

TEST_CASE("refute exit codes") {
  CHECK(run({"refute", "--entry", "a4-refute"}).code == 0);
  CHECK(run({"refute", "--entry", "c6-found-2-3"}).code == 1);
  CHECK(run({"refute", "--group", "a5", "--pattern", "2,3,5,2", "--budget", "1e-9",
             "--method", "normalized-backtracking"})
            .code == 3);
  CHECK(run({"refute", "--entry", "no-such-entry"}).code == 2);
}

TEST_CASE("search emits certificates that re-verify") {
  const Run r = run({"search", "--entry", "search-3.5", "--threads", "2"});
  REQUIRE(r.code == 0);
  const json report = json::parse(r.out);
  CHECK(report.at("outputs").at("solution_count") == 8);
  for (const auto &s : report.at("outputs").at("solutions"))
    CHECK(run({"verify", write_temp("sol", s)}).code == 0);

  const Run c = run({"search", "--group", "a6", "--pattern", "2,2,2,3,3,5", "--strategy", "cascade"});
  REQUIRE(c.code == 0);
  const json cj = json::parse(c.out);
  CHECK(run({"verify", write_temp("cascade", cj.at("outputs").at("certificate"))}).code == 0);

  CHECK(run({"search", "--group", "a5", "--pattern", "2,3,2,5", "--human"}).code == 0);
  CHECK(run({"search", "--group", "a5"}).code == 2);
}

TEST_CASE("multifold verdicts") {
  const Run r = run({"multifold", "group-168"});
  REQUIRE(r.code == 0);
  const json report = json::parse(r.out);
  CHECK(report.at("outputs").at("verdict") == "MULTIFOLD-CERTIFIED");
  CHECK(report.at("outputs").at("certified") == 10);

  const std::string trivial = write_temp("trivial", json{{"degree", 1}, {"generators", json::array()}});
  const json tj = json::parse(run({"multifold", trivial}).out);
  CHECK(tj.at("outputs").at("verdict") == "MULTIFOLD-CERTIFIED");
  CHECK(tj.at("outputs").at("class_count") == 0);

  const std::string a4 =
      write_temp("a4", json{{"degree", 4}, {"generators", {"(1,2,3)", "(1,2)(3,4)"}}});
  const Run inc = run({"multifold", a4});
  CHECK(inc.code == 1);
  CHECK(json::parse(inc.out).at("outputs").at("verdict") == "INCOMPLETE");
}

TEST_CASE("repro scopes and exit codes") {
  CHECK(run({"repro", "a4-refute"}).code == 0);
  CHECK(run({"repro", "lemma-3.5", "--human"}).out.find("search-3.5") != std::string::npos);
  CHECK(run({"repro", "lemma-4.7"}).code == 0);
  CHECK(run({"repro", "nothing-here"}).code == 2);
  const json j = json::parse(run({"repro", "patterns"}).out);
  CHECK(j.at("outputs").at("failed") == 0);
  CHECK(j.at("outputs").at("checks").size() == 2);
}

TEST_CASE("timing fields are the only difference between runs") {
  const json a = json::parse(run({"repro", "explicit", "--threads", "1"}).out);
  const json b = json::parse(run({"repro", "explicit", "--threads", "3"}).out);
  CHECK(strip_timing(a) == strip_timing(b));
  CHECK(strip_timing(a).dump().find("wall_seconds") == std::string::npos);
}
