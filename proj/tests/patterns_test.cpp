#include "doctest.h"

#include "support.hpp"

using namespace factorix;

TEST_CASE("word counts agree with brute-force enumeration up to 1000") {
  for (std::uint64_t n = 2; n <= 1000; ++n) {
    const auto bf = support::brute_force_words(n);
    CAPTURE(n);
    REQUIRE(word_count(n) == bf.words);
    REQUIRE(palindrome_count(n) == bf.palindromes);
    REQUIRE(reversal_class_count(n) == bf.classes.size());
    const auto listed = enumerate_reversal_classes(n);
    REQUIRE(std::vector<Word>(bf.classes.begin(), bf.classes.end()) == listed);
    REQUIRE(enumerate_words(n).size() == bf.words);
  }
}

TEST_CASE("word counts for the two group orders") {
  CHECK(word_count(168) == 20);
  CHECK(word_count(360) == 60);
  CHECK(word_count(7) == 1);
  CHECK(palindrome_count(360) == 0);
  CHECK(palindrome_count(36) == 2);
  CHECK(palindrome_count(8) == 1);
  CHECK(reversal_class_count(168) == 10);
  CHECK(reversal_class_count(360) == 30);
  CHECK(reversal_class_count(4) == 1);
  CHECK(enumerate_reversal_classes(168).size() == 10);
  CHECK(enumerate_reversal_classes(60).size() == reversal_class_count(60));
  CHECK(enumerate_reversal_classes(8) == std::vector<Word>{{2, 2, 2}});
  CHECK(omega(168) == 5);
  CHECK(omega(360) == 6);
  CHECK(omega(13) == 1);
  CHECK(prime_factors(360) == Word{2, 2, 2, 3, 3, 5});
}

TEST_CASE("prime-index discard") {
  PatternPlan plan = make_plan(168);
  CHECK(plan.classes.size() == 10);
  CHECK_THROWS_AS(prime_index_discard(plan, 7, false), Error);
  PatternPlan cut = prime_index_discard(plan, 7, true);
  const std::vector<Word> six{{2, 2, 2, 7, 3}, {2, 2, 3, 7, 2}, {2, 2, 7, 2, 3},
                              {2, 2, 7, 3, 2}, {2, 3, 2, 7, 2}, {2, 7, 2, 2, 3}};
  CHECK(cut.classes == six);
  CHECK(cut.discarded.size() == 4);
  for (const auto &d : cut.discarded)
    CHECK((d.word.front() == 7 || d.word.back() == 7));

  PatternPlan other = prime_index_discard(make_plan(360), 7, true);
  CHECK(other.classes.size() == 30);
  CHECK(other.discarded.empty());
  CHECK(make_plan(1).classes.empty());
}

TEST_CASE("ordered factorizations") {
  CHECK(enumerate_ordered_factorizations(12, 2) == std::vector<Word>{{2, 6}, {3, 4}, {4, 3}, {6, 2}});
  CHECK(enumerate_ordered_factorizations(8, 3) == std::vector<Word>{{2, 2, 2}});
  // Divisor recursion as the oracle.
  for (std::uint64_t n = 2; n <= 200; ++n)
    for (int k = 1; k <= 4; ++k) {
      std::vector<Word> want;
      std::function<void(std::uint64_t, Word)> rec = [&](std::uint64_t m, Word w) {
        if (static_cast<int>(w.size()) == k - 1) {
          if (m > 1) {
            w.push_back(m);
            want.push_back(w);
          }
          return;
        }
        for (std::uint64_t d = 2; d <= m; ++d)
          if (m % d == 0) {
            Word next = w;
            next.push_back(d);
            rec(m / d, next);
          }
      };
      rec(n, {});
      std::sort(want.begin(), want.end());
      CAPTURE(n);
      CAPTURE(k);
      CHECK(enumerate_ordered_factorizations(n, k) == want);
    }
}

TEST_CASE("binomials and word helpers") {
  CHECK(binomial(26, 6) == 230230);
  CHECK(binomial(12, 6) == 924);
  CHECK(binomial(5, 7) == 0);
  CHECK(reversed(Word{2, 3, 7}) == Word{7, 3, 2});
  CHECK(is_prime_word(Word{2, 3, 7}));
  CHECK_FALSE(is_prime_word(Word{6, 7}));
  CHECK(word_product(Word{2, 2, 2, 3, 7}) == 168);
  CHECK(word_to_string(Word{2, 3}) == "(2,3)");
}
