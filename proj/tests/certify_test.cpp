#include "doctest.h"

#include "factorix/catalog.hpp"
#include "support.hpp"

using namespace factorix;
using support::make_group;
using support::set_of;
using support::subgroup_of;

namespace {

const Catalog &catalog() {
  static const Catalog c = Catalog::load(default_catalog_path());
  return c;
}

Certificate of_entry(const std::string &id) { return catalog().certificate(catalog().entry(id)); }

Certificate whole_of(const Subgroup &h) { return whole_group_certificate(subgroup_table(h)); }

} // namespace

TEST_CASE("product_distinct") {
  auto g = make_group({"(3,4)(5,6)", "(1,2,3)(4,5,7)"}, 7);
  auto a = set_of(g, {"()", "(3,4)(5,6)"});
  CHECK(*product_distinct(*g, FactorSet::singleton(168, 0), a) == a);
  CHECK_FALSE(product_distinct(*g, a, a).has_value());

  Subgroup s4 = subgroup_of(g, {"(3,4)(5,6)", "(2,3,6)(4,7,5)"});
  FactorSet t(168, right_transversal(s4));
  auto full = product_distinct(*g, s4.members(), t);
  REQUIRE(full.has_value());
  CHECK(full->size() == 168);
}

TEST_CASE("verifier agrees with the brute-force product count") {
  std::mt19937_64 rng(5);
  for (const auto &[name, g] : support::zoo()) {
    if (g->order() < 4 || g->order() > 24)
      continue;
    CAPTURE(name);
    for (int trial = 0; trial < 20; ++trial) {
      Certificate c = support::random_certificate(g, rng);
      // Swap one element between two factors; the result may or may not factor.
      if (c.factors.size() >= 2) {
        auto x = c.factors[0].elements();
        auto y = c.factors[1].elements();
        std::vector<Elem> xs(x.begin(), x.end()), ys(y.begin(), y.end());
        const std::size_t i = rng() % xs.size(), j = rng() % ys.size();
        std::swap(xs[i], ys[j]);
        std::sort(xs.begin(), xs.end());
        std::sort(ys.begin(), ys.end());
        if (std::adjacent_find(xs.begin(), xs.end()) == xs.end() &&
            std::adjacent_find(ys.begin(), ys.end()) == ys.end()) {
          c.factors[0] = FactorSet(g->order(), xs);
          c.factors[1] = FactorSet(g->order(), ys);
        }
      }
      CHECK(verify_certificate(c).valid == (count_unique_products(c) == g->order()));
    }
  }
}

TEST_CASE("catalog certificates verify with their patterns") {
  const std::vector<std::pair<const char *, std::vector<std::size_t>>> cases{
      {"lemma-3.3", {6, 7, 2, 2}},   {"lemma-3.5", {12, 7, 2}},      {"lemma-3.6", {6, 2, 7, 2}},
      {"lemma-4.3", {60, 3, 2}},     {"lemma-4.3-reversed", {2, 3, 60}}, {"lemma-4.4", {18, 5, 2, 2}},
      {"lemma-4.5", {9, 2, 2, 10}},  {"lemma-4.6", {12, 3, 5, 2}},   {"lemma-4.7", {6, 2, 3, 10}}};
  for (const auto &[id, pattern] : cases) {
    CAPTURE(id);
    Certificate c = of_entry(id);
    CHECK(verify_certificate(c).valid);
    CHECK(c.pattern() == pattern);
    CHECK(count_unique_products(c) == c.group->order());
  }
  auto g = make_group({"(1,2,3,4,5)", "(1,2,3)"}, 5);
  CHECK(verify_certificate(whole_group_certificate(g)).valid);
}

TEST_CASE("the stated and listed third factors both verify") {
  Certificate c = of_entry("lemma-4.7");
  auto g = c.group;
  c.factors[2] = set_of(g, {"()", "(3,4,6)", "(2,3,4)"});
  CHECK(verify_certificate(c).valid);
}

TEST_CASE("collisions report the failing prefix") {
  Certificate c = of_entry("lemma-3.3");
  c.factors[3] = c.factors[2];
  const Verdict v = verify_certificate(c);
  CHECK_FALSE(v.valid);
  CHECK(v.failing_prefix >= 2);
}

TEST_CASE("normalize restores the identity in every factor") {
  Certificate c = of_entry("lemma-3.3");
  const auto &g = *c.group;
  Elem x = 0;
  for (Elem y : c.factors[0].elements())
    if (y != 0)
      x = g.inv(y);
  Certificate shifted = c;
  shifted.factors[0] = right_translate(g, c.factors[0], x);
  shifted.factors[1] = left_translate(g, g.inv(x), c.factors[1]);
  REQUIRE(verify_certificate(shifted).valid);
  REQUIRE_FALSE(shifted.normalized());
  Certificate n = normalize(shifted);
  CHECK(n.normalized());
  CHECK(verify_certificate(n).valid);
  CHECK(normalize(c).pattern() == c.pattern());

  auto s3 = make_group({"(1,2,3)", "(1,2)"}, 3);
  Elem g1 = support::elem(s3, "(1,2,3)");
  Certificate two{s3, {FactorSet::singleton(6, g1), left_translate(*s3, s3->inv(g1), FactorSet::whole(6))}};
  Certificate n2 = normalize(two);
  CHECK(n2.normalized());
  CHECK(verify_certificate(n2).valid);
}

TEST_CASE("reverse") {
  Certificate c = of_entry("lemma-3.3");
  Certificate r = reverse(c);
  CHECK(verify_certificate(r).valid);
  CHECK(r.pattern() == std::vector<std::size_t>{2, 2, 7, 6});
  CHECK(reverse(r) == c);
  Certificate p = of_entry("lemma-4.2");
  CHECK(reverse(p).pattern() == std::vector<std::size_t>{5, 2, 3, 2});
}

TEST_CASE("transversal lifts") {
  auto g = make_group({"(3,4)(5,6)", "(1,2,3)(4,5,7)"}, 7);
  Subgroup s4 = subgroup_of(g, {"(3,4)(5,6)", "(2,3,6)(4,7,5)"});
  SearchTask t;
  t.group = subgroup_table(s4);
  t.pattern = {2, 2, 2, 3};
  t.mode = SearchMode::FindFirst;
  auto r = generic_search(t);
  REQUIRE_FALSE(r.solutions.empty());
  Certificate right = lift_by_transversal(r.solutions.front(), s4, Side::Right);
  CHECK(verify_certificate(right).valid);
  CHECK(right.pattern() == std::vector<std::size_t>{2, 2, 2, 3, 7});
  Certificate left = lift_by_transversal(r.solutions.front(), s4, Side::Left);
  CHECK(verify_certificate(left).valid);
  CHECK(left.pattern() == std::vector<std::size_t>{7, 2, 2, 2, 3});

  auto a6 = make_group({"(1,2,3,4,5)", "(4,5,6)"}, 6);
  Subgroup a5 = subgroup_of(a6, {"(1,2,3,4,5)", "(1,2,3)"});
  t.group = subgroup_table(a5);
  t.pattern = {2, 2, 3, 5};
  r = generic_search(t);
  REQUIRE_FALSE(r.solutions.empty());
  Certificate up = lift_by_transversal(r.solutions.front(), a5, Side::Right);
  CHECK(verify_certificate(up).valid);
  CHECK(up.pattern() == std::vector<std::size_t>{2, 2, 3, 5, 6});

  Subgroup whole = Subgroup::whole(g);
  Certificate same = strip_singletons(lift_by_transversal(whole_of(whole), whole, Side::Right));
  CHECK(same.pattern() == std::vector<std::size_t>{168});
}

TEST_CASE("quotient lifts") {
  auto s4 = make_group({"(1,2,3,4)", "(1,2)"}, 4);
  Subgroup v4 = subgroup_of(s4, {"(1,2)(3,4)", "(1,3)(2,4)"});
  Quotient q = quotient_group(v4);
  SearchTask t;
  t.group = q.table;
  t.pattern = {2, 3};
  t.mode = SearchMode::FindFirst;
  auto r = generic_search(t);
  REQUIRE_FALSE(r.solutions.empty());
  const std::vector<std::vector<std::size_t>> want{{4, 2, 3}, {2, 4, 3}, {2, 3, 4}};
  for (std::size_t pos = 0; pos < 3; ++pos) {
    Certificate c = lift_by_quotient(r.solutions.front(), v4, pos);
    CHECK(verify_certificate(c).valid);
    CHECK(c.pattern() == want[pos]);
  }
  CHECK_THROWS_AS(lift_by_quotient(r.solutions.front(), v4, 3), Error);

  Subgroup trivial = Subgroup::trivial(s4);
  Quotient same = quotient_group(trivial);
  Certificate c = strip_singletons(lift_by_quotient(whole_group_certificate(same.table), trivial, 0));
  CHECK(c.pattern() == std::vector<std::size_t>{24});
}

TEST_CASE("sandwich composition") {
  auto a6 = make_group({"(1,2,3,4,5)", "(4,5,6)"}, 6);
  Subgroup s4 = subgroup_of(a6, {"(1,2)(3,4)", "(1,2,3)", "(1,2)(5,6)"});
  Subgroup c5 = subgroup_of(a6, {"(1,2,3,4,5)"});
  SearchTask t;
  t.group = subgroup_table(s4);
  t.pattern = {2, 2, 2, 3};
  t.mode = SearchMode::FindFirst;
  auto r = generic_search(t);
  REQUIRE_FALSE(r.solutions.empty());
  Certificate c = compose_sandwich(s4, r.solutions.front(), c5, whole_of(c5));
  CHECK(verify_certificate(c).valid);
  CHECK(c.pattern() == std::vector<std::size_t>{2, 2, 2, 3, 3, 5});

  Subgroup p2 = sylow_subgroup(a6, 2);
  Subgroup p3 = sylow_subgroup(a6, 3);
  t.group = subgroup_table(p2);
  t.pattern = {2, 2, 2};
  auto rp2 = generic_search(t);
  t.group = subgroup_table(p3);
  t.pattern = {3, 3};
  auto rp3 = generic_search(t);
  REQUIRE(!rp2.solutions.empty());
  REQUIRE(!rp3.solutions.empty());
  Certificate d = compose_sandwich(p2, rp2.solutions.front(), p3, rp3.solutions.front());
  CHECK(verify_certificate(d).valid);
  CHECK(d.pattern() == std::vector<std::size_t>{2, 2, 2, 5, 3, 3});

  Subgroup two = subgroup_of(a6, {"(1,2)(3,4)"});
  CHECK_THROWS_AS(compose_sandwich(two, whole_of(two), two, whole_of(two)), Error);
}

TEST_CASE("divisibility prune") {
  auto g = make_group({"(3,4)(5,6)", "(1,2,3)(4,5,7)"}, 7);
  Subgroup s4 = subgroup_of(g, {"(3,4)(5,6)", "(2,3,6)(4,7,5)"});
  CHECK(divisibility_prune(*g, s4.members(), EndPosition::First));
  CHECK_FALSE(divisibility_prune(*g, set_of(g, {"()", "(2,3,4)(5,6,7)"}), EndPosition::First));
  CHECK(divisibility_prune(*g, set_of(g, {"()", "(2,7)(3,4,5,6)"}), EndPosition::Last));
}

TEST_CASE("refine and merge") {
  Certificate c = of_entry("lemma-3.3");
  Certificate m = merge_adjacent(c, 2);
  CHECK(m.pattern() == std::vector<std::size_t>{6, 7, 4});
  CHECK(verify_certificate(m).valid);
  Certificate back = refine_factor(m, 2, {c.factors[2], c.factors[3]});
  CHECK(back == c);
  CHECK_THROWS_AS(merge_adjacent(c, 3), Error);
}
