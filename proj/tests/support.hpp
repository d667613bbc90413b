#pragma once

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "factorix/certificate.hpp"
#include "factorix/error.hpp"
#include "factorix/patterns.hpp"
#include "factorix/search.hpp"
#include "factorix/structure.hpp"

namespace support {

using namespace factorix;

inline GroupPtr make_group(const std::vector<std::string> &gens, int degree) {
  std::vector<Perm> ps;
  for (const auto &g : gens)
    ps.push_back(Perm::parse(g, degree));
  return generate_group(ps, degree);
}

inline Elem elem(const GroupPtr &g, const std::string &cycles) {
  return g->index_of(Perm::parse(cycles, g->degree()));
}

inline FactorSet set_of(const GroupPtr &g, const std::vector<std::string> &cycles) {
  std::vector<Elem> v;
  for (const auto &c : cycles)
    v.push_back(elem(g, c));
  return FactorSet(g->order(), v);
}

inline Subgroup subgroup_of(const GroupPtr &g, const std::vector<std::string> &gens) {
  std::vector<Elem> v;
  for (const auto &c : gens)
    v.push_back(elem(g, c));
  return Subgroup(g, v);
}

struct Named {
  std::string name;
  GroupPtr group;
};

/// Permutation groups of order at most 60.
inline const std::vector<Named> &zoo() {
  static const std::vector<Named> groups = [] {
    std::vector<Named> z;
    auto add = [&](std::string name, std::vector<std::string> gens, int degree) {
      z.push_back({std::move(name), make_group(gens, degree)});
    };
    add("C1", {"()"}, 1);
    add("C2", {"(1,2)"}, 2);
    add("C4", {"(1,2,3,4)"}, 4);
    add("C6", {"(1,2,3,4,5,6)"}, 6);
    add("C8", {"(1,2,3,4,5,6,7,8)"}, 8);
    add("C2xC2", {"(1,2)", "(3,4)"}, 4);
    add("S3", {"(1,2,3)", "(1,2)"}, 3);
    add("D8", {"(1,2,3,4)", "(1,3)"}, 4);
    add("Q8", {"(1,2,4,7)(3,6,8,5)", "(1,3,4,8)(2,5,7,6)"}, 8);
    add("C3xC3", {"(1,2,3)", "(4,5,6)"}, 6);
    add("D10", {"(1,2,3,4,5)", "(2,5)(3,4)"}, 5);
    add("D12", {"(1,2,3,4,5,6)", "(2,6)(3,5)"}, 6);
    add("A4", {"(1,2,3)", "(1,2)(3,4)"}, 4);
    add("C2xC2xC2", {"(1,2)", "(3,4)", "(5,6)"}, 6);
    add("C2xC6", {"(1,2)", "(3,4,5,6,7,8)"}, 8);
    add("F20", {"(1,2,3,4,5)", "(2,3,5,4)"}, 5);
    add("S4", {"(1,2,3,4)", "(1,2)"}, 4);
    add("C3xS3", {"(1,2,3)", "(4,5,6)", "(4,5)"}, 6);
    add("D14", {"(1,2,3,4,5,6,7)", "(2,7)(3,6)(4,5)"}, 7);
    add("F21", {"(1,2,3,4,5,6,7)", "(2,3,5)(4,7,6)"}, 7);
    add("A5", {"(1,2,3,4,5)", "(1,2,3)"}, 5);
    add("C5xA4", {"(1,2,3,4,5)", "(6,7,8)", "(6,7)(8,9)"}, 9);
    return z;
  }();
  return groups;
}

/// Number of k-tuples of identity-containing subsets with the given sizes
/// that factor G uniquely. Exponential; tiny groups only.
inline std::uint64_t brute_force_count(const GroupPtr &g, const std::vector<std::size_t> &pattern) {
  const std::size_t n = g->order();
  std::vector<std::vector<FactorSet>> choices;
  for (std::size_t size : pattern) {
    std::vector<FactorSet> sets;
    std::vector<bool> pick(n - 1, false);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(size - 1), true);
    do {
      std::vector<Elem> v{0};
      for (std::size_t i = 0; i + 1 < n; ++i)
        if (pick[i])
          v.push_back(static_cast<Elem>(i + 1));
      sets.emplace_back(n, v);
    } while (std::prev_permutation(pick.begin(), pick.end()));
    choices.push_back(std::move(sets));
  }
  std::uint64_t count = 0;
  std::vector<std::size_t> at(pattern.size(), 0);
  for (;;) {
    Certificate c{g, {}};
    for (std::size_t i = 0; i < at.size(); ++i)
      c.factors.push_back(choices[i][at[i]]);
    if (count_unique_products(c) == n)
      ++count;
    std::size_t i = 0;
    while (i < at.size() && ++at[i] == choices[i].size())
      at[i++] = 0;
    if (i == at.size())
      return count;
  }
}

struct WordCounts {
  std::uint64_t words = 0;
  std::uint64_t palindromes = 0;
  std::set<Word> classes;
};

/// Every sequence of n's prime divisors of the right length whose product
/// is n, found by trial division and an odometer over the primes.
inline WordCounts brute_force_words(std::uint64_t n) {
  std::vector<std::uint64_t> primes;
  std::size_t len = 0;
  std::uint64_t m = n;
  for (std::uint64_t p = 2; p <= m; ++p) {
    if (m % p)
      continue;
    primes.push_back(p);
    while (m % p == 0) {
      m /= p;
      ++len;
    }
  }
  WordCounts out;
  if (len == 0)
    return out;
  std::vector<std::size_t> at(len, 0);
  for (;;) {
    Word w;
    std::uint64_t prod = 1;
    for (auto i : at) {
      w.push_back(primes[i]);
      prod *= primes[i];
    }
    if (prod == n) {
      ++out.words;
      Word r(w.rbegin(), w.rend());
      out.palindromes += r == w ? 1 : 0;
      out.classes.insert(std::min(w, r));
    }
    std::size_t i = 0;
    while (i < len && ++at[i] == primes.size())
      at[i++] = 0;
    if (i == len)
      return out;
  }
}

/// Double cosets of (A, B) by direct set building.
inline std::size_t brute_force_double_cosets(const Subgroup &a, const Subgroup &b) {
  const GroupTable &g = a.parent();
  std::set<std::vector<Elem>> seen;
  for (std::size_t x = 0; x < g.order(); ++x) {
    std::vector<Elem> cell;
    for (Elem s : a.members().elements())
      for (Elem t : b.members().elements())
        cell.push_back(g.mul(g.mul(s, static_cast<Elem>(x)), t));
    std::sort(cell.begin(), cell.end());
    cell.erase(std::unique(cell.begin(), cell.end()), cell.end());
    seen.insert(cell);
  }
  return seen.size();
}

inline Subgroup random_subgroup(const GroupPtr &g, std::mt19937_64 &rng) {
  std::uniform_int_distribution<std::size_t> pick(0, g->order() - 1);
  std::vector<Elem> gens{static_cast<Elem>(pick(rng))};
  if (rng() % 3 == 0)
    gens.push_back(static_cast<Elem>(pick(rng)));
  return Subgroup(g, gens);
}

/// A valid certificate built from random transversal lifts, so its
/// validity never depends on search.
inline Certificate random_certificate(const GroupPtr &g, std::mt19937_64 &rng, int depth = 3) {
  if (g->order() == 1 || depth == 0)
    return whole_group_certificate(g);
  for (int attempt = 0; attempt < 4; ++attempt) {
    Subgroup h = random_subgroup(g, rng);
    if (h.order() == g->order() || h.order() == 1)
      continue;
    Certificate inner = random_certificate(subgroup_table(h), rng, depth - 1);
    return lift_by_transversal(inner, h, rng() % 2 ? Side::Left : Side::Right);
  }
  return whole_group_certificate(g);
}

struct PropertyTally {
  std::size_t cases = 0;
  std::size_t checks = 0;
  std::size_t quotient_lifts = 0;
  std::size_t sandwiches = 0;
  std::size_t duality = 0;
  std::size_t failed = 0;
  std::vector<std::string> failures; ///< the first few

  void expect(bool ok, const std::string &what) {
    ++checks;
    if (ok)
      return;
    ++failed;
    if (failures.size() < 20)
      failures.push_back(what);
  }
};

/// Random transformation cases over zoo groups; every output must
/// re-verify and normalize must put the identity in every factor.
inline PropertyTally run_properties(std::size_t cases, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  PropertyTally t;
  const auto &groups = zoo();
  for (std::size_t i = 0; i < cases; ++i) {
    const Named &ng = groups[rng() % groups.size()];
    const GroupPtr &g = ng.group;
    const std::string tag = ng.name + " case " + std::to_string(i);
    ++t.cases;

    Certificate c = random_certificate(g, rng);
    t.expect(verify_certificate(c).valid, tag + ": random lift");
    t.expect(count_unique_products(c) == g->order(), tag + ": brute force on random lift");

    Certificate n = normalize(c);
    t.expect(verify_certificate(n).valid, tag + ": normalize");
    t.expect(n.normalized(), tag + ": normalize leaves identity in every factor");
    t.expect(n.pattern() == c.pattern(), tag + ": normalize keeps the pattern");

    Certificate r = reverse(c);
    t.expect(verify_certificate(r).valid, tag + ": reverse");
    t.expect(reverse(r) == c, tag + ": reverse twice");
    auto rp = c.pattern();
    std::reverse(rp.begin(), rp.end());
    t.expect(r.pattern() == rp, tag + ": reverse flips the pattern");

    Subgroup h = random_subgroup(g, rng);
    if (h.order() > 1 && h.order() < g->order()) {
      Certificate inner = random_certificate(subgroup_table(h), rng, 2);
      for (Side side : {Side::Left, Side::Right})
        t.expect(verify_certificate(lift_by_transversal(inner, h, side)).valid,
                 tag + ": transversal lift");
      if (is_normal(h)) {
        Quotient q = quotient_group(h);
        Certificate qc = random_certificate(q.table, rng, 2);
        const std::size_t pos = rng() % (qc.factors.size() + 1);
        t.expect(verify_certificate(lift_by_quotient(qc, h, pos)).valid,
                 tag + ": quotient lift");
        ++t.quotient_lifts;
      }
    }

    Subgroup a = random_subgroup(g, rng);
    Subgroup b = random_subgroup(g, rng);
    const bool cond = conjugate_intersection_trivial(a, b);
    Certificate ca = random_certificate(subgroup_table(a), rng, 1);
    Certificate cb = random_certificate(subgroup_table(b), rng, 1);
    if (cond) {
      t.expect(verify_certificate(compose_sandwich(a, ca, b, cb)).valid, tag + ": sandwich");
      ++t.sandwiches;
    } else {
      bool threw = false;
      try {
        compose_sandwich(a, ca, b, cb);
      } catch (const Error &e) {
        threw = e.code() == ErrorCode::ConditionFailed;
      }
      t.expect(threw, tag + ": sandwich without its condition must throw");
    }

    if (g->order() <= 12 && g->order() > 1 && i % 4 == 0) {
      const auto words = enumerate_ordered_factorizations(g->order(), 2 + static_cast<int>(rng() % 2));
      if (!words.empty()) {
        Word w = words[rng() % words.size()];
        SearchTask task;
        task.group = g;
        task.pattern.assign(w.begin(), w.end());
        task.mode = SearchMode::FindAll;
        task.limits.threads = 1;
        SearchTask back = task;
        std::reverse(back.pattern.begin(), back.pattern.end());
        const auto fwd = generic_search(task);
        const auto rev = generic_search(back);
        t.expect(fwd.solution_count == rev.solution_count,
                 tag + ": reversal duality for " + word_to_string(w));
        bool all = true;
        for (const auto &s : fwd.solutions) {
          const auto rs = reverse(s);
          all = all && std::binary_search(rev.solutions.begin(), rev.solutions.end(), rs);
        }
        t.expect(all, tag + ": reversed solutions appear in the reversed search");
        ++t.duality;
      }
    }
  }
  return t;
}

} // namespace support
