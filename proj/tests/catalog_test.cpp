#include "doctest.h"

#include "factorix/catalog.hpp"
#include "support.hpp"

using namespace factorix;
using ojson = nlohmann::ordered_json;

namespace {

const Catalog &catalog() {
  static const Catalog c = Catalog::load(default_catalog_path());
  return c;
}

ErrorCode parse_error_code(const std::string &text) {
  try {
    Catalog::parse(ojson::parse(text));
  } catch (const Error &e) {
    return e.code();
  }
  FAIL("catalog parsed");
  return ErrorCode::ParseError;
}

} // namespace

TEST_CASE("groups load from their generators") {
  const CatalogGroup &g = catalog().group("group-168");
  CHECK(g.group->order() == 168);
  CHECK(g.group->generators().front() == Perm::parse("(3,4)(5,6)", 7));
  CHECK(catalog().group("a6").group->order() == 360);
  CHECK(catalog().group("a5").group->order() == 60);
  CHECK_THROWS_AS(catalog().group("nope"), Error);
  CHECK_THROWS_AS(catalog().entry("lemma-9.9"), Error);
}

TEST_CASE("entries resolve") {
  const CatalogEntry &e = catalog().entry("lemma-4.4");
  CHECK(e.type == EntryType::Explicit);
  CHECK(e.pattern == std::vector<std::size_t>{18, 5, 2, 2});
  REQUIRE(e.factors.size() == 4);
  auto f = support::subgroup_of(e.group, {"(1,2,3)", "(4,5,6)", "(1,2)(4,5)"});
  CHECK(e.factors[0].set == f.members());

  const CatalogEntry &l = catalog().entry("lemma-4.7");
  CHECK_FALSE(l.note.empty());
  CHECK(l.factors[2].set == support::set_of(l.group, {"()", "(3,4,6)", "(2,4,3)"}));

  std::size_t searches = 0;
  for (const auto &x : catalog().entries())
    searches += x.type == EntryType::Search ? 1 : 0;
  CHECK(searches == 7);
}

TEST_CASE("matching groups by their elements") {
  auto same = support::make_group({"(1,2,3,4,5)", "(1,2,3)"}, 5);
  const CatalogGroup *m = catalog().match(*same);
  REQUIRE(m);
  CHECK(m->id == "a5");
  auto other = support::make_group({"(1,2,3,4)", "(1,2)"}, 5);
  CHECK(catalog().match(*other) == nullptr);
}

TEST_CASE("bad catalogs fail with the right code") {
  CHECK(parse_error_code(R"j({"groups":{}})j") == ErrorCode::ParseError);
  CHECK(parse_error_code(R"j({"groups":{"g":{"degree":3,"generators":["(1,2,3)"],"order":6}},"entries":{}})j") ==
        ErrorCode::ParseError);
  CHECK(parse_error_code(R"j({"groups":{"g":{"degree":3,"generators":["(1,2,3)"]}},
      "entries":{"x":{"type":"explicit","group":"g","factors":[{"set":["()","(1,2)"]}]}}})j") ==
        ErrorCode::ElementNotInGroup);
  CHECK(parse_error_code(R"j({"groups":{"g":{"degree":3,"generators":["(1,2,3)"]}},
      "entries":{"x":{"type":"explicit","group":"h","factors":[]}}})j") == ErrorCode::UnknownId);
  CHECK(parse_error_code(R"j({"groups":{"g":{"degree":3,"generators":["(1,2,3)"]}},
      "entries":{"x":{"type":"sandwich","group":"g","a":"p","b":"q"}}})j") == ErrorCode::UnknownId);
  CHECK(parse_error_code(R"j({"groups":{"g":{"degree":3,"generators":["(1,2,3)"]}},
      "entries":{"x":{"type":"explicit","group":"g","pattern":[2],"factors":[{"set":["()","(1,2,3)","(1,3,2)"]}]}}})j") ==
        ErrorCode::ParseError);
}

TEST_CASE("explicit entries give certificates and searches give tasks") {
  Certificate c = catalog().certificate(catalog().entry("lemma-3.5"));
  CHECK(verify_certificate(c).valid);
  CHECK_THROWS_AS(catalog().certificate(catalog().entry("search-3.5")), Error);
  SearchTask t = catalog().search_task(catalog().entry("search-3.5"));
  CHECK(t.strategy == Strategy::Case2);
  CHECK(t.mode == SearchMode::FindAll);
  CHECK(t.pattern == std::vector<std::size_t>{12, 7, 2});
  REQUIRE(t.first);
  CHECK(t.first->is_subgroup());
}
