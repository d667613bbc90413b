#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace factorix {

using Word = std::vector<std::uint64_t>;

/// Prime factors of n with multiplicity, ascending.
Word prime_factors(std::uint64_t n);

/// (prime, multiplicity) pairs of n, ascending by prime.
std::vector<std::pair<std::uint64_t, int>> prime_signature(std::uint64_t n);

/// Number of prime factors counted with multiplicity.
int omega(std::uint64_t n);

std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// Distinct words over the prime multiset of n: Ω! / Π k_i!.
std::uint64_t word_count(std::uint64_t n);
/// Words equal to their own reversal.
std::uint64_t palindrome_count(std::uint64_t n);
/// Classes of words under reversal: (words + palindromes) / 2.
std::uint64_t reversal_class_count(std::uint64_t n);

/// All distinct arrangements of the prime multiset of n, lexicographic.
std::vector<Word> enumerate_words(std::uint64_t n);

/// One word per reversal class, the lexicographically smaller of w and its
/// reverse; lexicographic order.
std::vector<Word> enumerate_reversal_classes(std::uint64_t n);

Word reversed(const Word &w);
bool is_prime_word(const Word &w);
std::uint64_t word_product(const Word &w);
std::string word_to_string(const Word &w);

/// Every ordered k-tuple of integers > 1 with product n, lexicographic.
std::vector<Word> enumerate_ordered_factorizations(std::uint64_t n, int k);

struct DiscardedWord {
  Word word;
  std::string reason;
};

struct PatternPlan {
  std::uint64_t n = 1;
  int omega = 0;
  std::vector<Word> classes;
  std::vector<DiscardedWord> discarded;
};

PatternPlan make_plan(std::uint64_t n);

/// Moves every class whose representative starts or ends with the prime
/// `p` into the discarded list. The caller must assert that the group has a
/// multifold-factorizable subgroup of index p; without that assertion the
/// call throws PreconditionFailed.
PatternPlan prime_index_discard(PatternPlan plan, std::uint64_t p, bool hypothesis_asserted);

} // namespace factorix
