#include "doctest.h"

#include <set>

#include "support.hpp"

using namespace factorix;
using support::make_group;
using support::subgroup_of;

namespace {

GroupPtr g168() { return make_group({"(3,4)(5,6)", "(1,2,3)(4,5,7)"}, 7); }
GroupPtr a5() { return make_group({"(1,2,3,4,5)", "(1,2,3)"}, 5); }
GroupPtr a6() { return make_group({"(1,2,3,4,5)", "(4,5,6)"}, 6); }

// Every element lies in exactly one coset H t.
bool right_cosets_partition(const Subgroup &h, const std::vector<Elem> &reps) {
  const GroupTable &g = h.parent();
  std::vector<int> hits(g.order(), 0);
  for (Elem t : reps)
    for (Elem x : h.members().elements())
      ++hits[g.mul(x, t)];
  return std::all_of(hits.begin(), hits.end(), [](int c) { return c == 1; });
}

bool left_cosets_partition(const Subgroup &h, const std::vector<Elem> &reps) {
  const GroupTable &g = h.parent();
  std::vector<int> hits(g.order(), 0);
  for (Elem t : reps)
    for (Elem x : h.members().elements())
      ++hits[g.mul(t, x)];
  return std::all_of(hits.begin(), hits.end(), [](int c) { return c == 1; });
}

bool brute_conjugates_meet_trivially(const Subgroup &a, const Subgroup &b) {
  const GroupTable &g = a.parent();
  for (std::size_t x = 0; x < g.order(); ++x)
    for (Elem s : a.members().elements())
      if (s != 0 && b.contains(g.conjugate(s, static_cast<Elem>(x))))
        return false;
  return true;
}

} // namespace

TEST_CASE("transversals partition the group into cosets") {
  auto g = g168();
  Subgroup s4 = subgroup_of(g, {"(3,4)(5,6)", "(2,3,6)(4,7,5)"});
  REQUIRE(s4.order() == 24);
  auto r = right_transversal(s4);
  CHECK(r.size() == 7);
  CHECK(r.front() == 0);
  CHECK(right_cosets_partition(s4, r));
  CHECK(left_cosets_partition(s4, left_transversal(s4)));

  auto h = a6();
  Subgroup a5in6 = subgroup_of(h, {"(1,2,3,4,5)", "(1,2,3)"});
  auto rt = right_transversal(a5in6);
  CHECK(rt.size() == 6);
  std::set<int> images;
  for (Elem t : rt)
    images.insert(h->element(t)(6));
  CHECK(images.size() == 6);
  CHECK(left_cosets_partition(a5in6, left_transversal(a5in6)));

  Subgroup whole = Subgroup::whole(g);
  CHECK(right_transversal(whole) == std::vector<Elem>{0});
  CHECK(left_transversal(whole) == std::vector<Elem>{0});

  auto c4 = make_group({"(1,2,3,4)"}, 4);
  CHECK(left_transversal(subgroup_of(c4, {"(1,3)(2,4)"})).size() == 2);
}

TEST_CASE("coset indices agree with the transversal") {
  for (const auto &[name, g] : support::zoo()) {
    CAPTURE(name);
    std::mt19937_64 rng(7);
    Subgroup h = support::random_subgroup(g, rng);
    auto r = right_transversal(h);
    auto idx = right_coset_index(h, r);
    for (std::size_t i = 0; i < r.size(); ++i)
      CHECK(idx[r[i]] == i);
    for (Elem x : h.members().elements())
      CHECK(idx[x] == 0);
  }
}

TEST_CASE("double coset counts match direct set building") {
  auto g = a5();
  Subgroup a = subgroup_of(g, {"(1,2)(3,4)"});
  Subgroup d = subgroup_of(g, {"(1,2,3,4,5)"});
  auto dc = double_cosets(a, d);
  CHECK(dc.representatives.size() == 6);
  CHECK(support::brute_force_double_cosets(a, d) == 6);
  std::size_t total = 0;
  for (auto s : dc.coset_sizes)
    total += s;
  CHECK(total == 60);

  auto h = a6();
  Subgroup s4 = subgroup_of(h, {"(1,2)(3,4)", "(1,2,3)", "(1,2)(5,6)"});
  Subgroup c5 = subgroup_of(h, {"(1,2,3,4,5)"});
  REQUIRE(s4.order() == 24);
  CHECK(double_cosets(s4, c5).representatives.size() == 3);
  CHECK(support::brute_force_double_cosets(s4, c5) == 3);

  Subgroup whole = Subgroup::whole(g);
  CHECK(double_cosets(whole, whole).representatives.size() == 1);

  std::mt19937_64 rng(11);
  for (const auto &[name, z] : support::zoo()) {
    CAPTURE(name);
    Subgroup x = support::random_subgroup(z, rng);
    Subgroup y = support::random_subgroup(z, rng);
    CHECK(double_cosets(x, y).representatives.size() == support::brute_force_double_cosets(x, y));
  }
}

TEST_CASE("conjugate intersection test against all conjugators") {
  auto h = a6();
  Subgroup s4 = subgroup_of(h, {"(1,2)(3,4)", "(1,2,3)", "(1,2)(5,6)"});
  Subgroup c5 = subgroup_of(h, {"(1,2,3,4,5)"});
  CHECK(conjugate_intersection_trivial(s4, c5));

  auto g = a5();
  Subgroup two = subgroup_of(g, {"(1,2)(3,4)"});
  CHECK_FALSE(conjugate_intersection_trivial(two, two));
  Subgroup p2 = sylow_subgroup(g, 2);
  CHECK_FALSE(conjugate_intersection_trivial(p2, two));
  CHECK_FALSE(brute_conjugates_meet_trivially(p2, two));

  std::mt19937_64 rng(3);
  for (const auto &[name, z] : support::zoo()) {
    CAPTURE(name);
    for (int i = 0; i < 4; ++i) {
      Subgroup x = support::random_subgroup(z, rng);
      Subgroup y = support::random_subgroup(z, rng);
      CHECK(conjugate_intersection_trivial(x, y) == brute_conjugates_meet_trivially(x, y));
    }
  }
}

TEST_CASE("quotients") {
  auto s4 = make_group({"(1,2,3,4)", "(1,2)"}, 4);
  Subgroup v4 = subgroup_of(s4, {"(1,2)(3,4)", "(1,3)(2,4)"});
  REQUIRE(is_normal(v4));
  Quotient q = quotient_group(v4);
  REQUIRE(q.table->order() == 6);
  bool abelian = true;
  for (Elem a = 0; a < 6; ++a)
    for (Elem b = 0; b < 6; ++b)
      abelian = abelian && q.table->mul(a, b) == q.table->mul(b, a);
  CHECK_FALSE(abelian);
  // The projection is a homomorphism onto cosets built independently.
  for (Elem x = 0; x < 24; ++x)
    for (Elem y = 0; y < 24; ++y)
      CHECK(q.projection[s4->mul(x, y)] == q.table->mul(q.projection[x], q.projection[y]));
  for (Elem c = 0; c < 6; ++c)
    CHECK(q.projection[q.coset_reps[c]] == c);

  CHECK(quotient_group(Subgroup::whole(s4)).table->order() == 1);

  auto a4 = make_group({"(1,2,3)", "(1,2)(3,4)"}, 4);
  Subgroup c3 = subgroup_of(a4, {"(1,2,3)"});
  CHECK_FALSE(is_normal(c3));
  CHECK_THROWS_AS(quotient_group(c3), Error);
}

TEST_CASE("subgroups of a given order and Sylow subgroups") {
  auto g = g168();
  auto six = find_subgroup_of_order(g, 6);
  REQUIRE(six.has_value());
  CHECK(six->order() == 6);
  CHECK(find_subgroup_of_order(g, 1)->order() == 1);
  CHECK_FALSE(find_subgroup_of_order(g, 14).has_value());

  auto h = a6();
  auto f36 = find_subgroup_of_order(h, 36);
  REQUIRE(f36.has_value());
  std::size_t central = 0;
  for (Elem z : f36->members().elements()) {
    bool commutes = true;
    for (Elem x : f36->members().elements())
      commutes = commutes && h->mul(x, z) == h->mul(z, x);
    central += commutes ? 1 : 0;
  }
  CHECK(central == 1);

  CHECK(sylow_subgroup(a5(), 5).order() == 5);
  CHECK(sylow_subgroup(h, 2).order() == 8);
  Subgroup p3 = sylow_subgroup(h, 3);
  CHECK(p3.order() == 9);
  for (Elem x : p3.members().elements())
    CHECK(element_order(x, *h) <= 3);
  CHECK_THROWS_AS(sylow_subgroup(h, 7), Error);
}

TEST_CASE("subgroup tables keep member order") {
  auto g = g168();
  Subgroup s4 = subgroup_of(g, {"(3,4)(5,6)", "(2,3,6)(4,7,5)"});
  auto t = subgroup_table(s4);
  REQUIRE(t->order() == 24);
  for (Elem i = 0; i < 24; ++i)
    CHECK(t->element(i) == g->element(s4.members().elements()[i]));
}

TEST_CASE("conjugacy class representatives") {
  CHECK(conjugacy_class_representatives(*a5()).size() == 5);
  CHECK(conjugacy_class_representatives(*g168()).size() == 6);
  CHECK(conjugacy_class_representatives(*a6()).size() == 7);
}
