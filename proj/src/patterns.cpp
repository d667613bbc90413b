#include "factorix/patterns.hpp"

#include <algorithm>
#include <functional>

#include "factorix/error.hpp"

namespace factorix {

Word prime_factors(std::uint64_t n) {
  Word out;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    while (n % d == 0) {
      out.push_back(d);
      n /= d;
    }
  if (n > 1)
    out.push_back(n);
  return out;
}

std::vector<std::pair<std::uint64_t, int>> prime_signature(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, int>> sig;
  for (std::uint64_t p : prime_factors(n)) {
    if (!sig.empty() && sig.back().first == p)
      ++sig.back().second;
    else
      sig.emplace_back(p, 1);
  }
  return sig;
}

int omega(std::uint64_t n) { return static_cast<int>(prime_factors(n).size()); }

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n)
    return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i)
    r = r * (n - k + i) / i;
  return r;
}

namespace {

std::uint64_t factorial(std::uint64_t n) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 2; i <= n; ++i)
    r *= i;
  return r;
}

} // namespace

std::uint64_t word_count(std::uint64_t n) {
  std::uint64_t r = factorial(static_cast<std::uint64_t>(omega(n)));
  for (auto [p, k] : prime_signature(n))
    r /= factorial(static_cast<std::uint64_t>(k));
  return r;
}

std::uint64_t palindrome_count(std::uint64_t n) {
  // A palindrome is fixed by its first half; at most one letter may occur
  // an odd number of times, and it then sits in the middle.
  auto sig = prime_signature(n);
  int odd = 0;
  std::uint64_t half = 0;
  for (auto [p, k] : sig) {
    odd += k % 2;
    half += static_cast<std::uint64_t>(k / 2);
  }
  if (odd > 1)
    return 0;
  std::uint64_t r = factorial(half);
  for (auto [p, k] : sig)
    r /= factorial(static_cast<std::uint64_t>(k / 2));
  return r;
}

std::uint64_t reversal_class_count(std::uint64_t n) {
  return (word_count(n) + palindrome_count(n)) / 2;
}

std::vector<Word> enumerate_words(std::uint64_t n) {
  Word w = prime_factors(n);
  std::vector<Word> out;
  do
    out.push_back(w);
  while (std::next_permutation(w.begin(), w.end()));
  return out;
}

Word reversed(const Word &w) { return Word(w.rbegin(), w.rend()); }

std::vector<Word> enumerate_reversal_classes(std::uint64_t n) {
  std::vector<Word> out;
  for (auto &w : enumerate_words(n))
    if (w <= reversed(w))
      out.push_back(std::move(w));
  return out;
}

bool is_prime_word(const Word &w) {
  return std::all_of(w.begin(), w.end(),
                     [](std::uint64_t m) { return m > 1 && prime_factors(m).size() == 1; });
}

std::uint64_t word_product(const Word &w) {
  std::uint64_t r = 1;
  for (auto m : w)
    r *= m;
  return r;
}

std::string word_to_string(const Word &w) {
  std::string s = "(";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i)
      s += ",";
    s += std::to_string(w[i]);
  }
  return s + ")";
}

std::vector<Word> enumerate_ordered_factorizations(std::uint64_t n, int k) {
  std::vector<Word> out;
  Word cur;
  std::function<void(std::uint64_t, int)> rec = [&](std::uint64_t rest, int left) {
    if (left == 1) {
      if (rest > 1) {
        cur.push_back(rest);
        out.push_back(cur);
        cur.pop_back();
      }
      return;
    }
    for (std::uint64_t d = 2; d <= rest; ++d) {
      if (rest % d != 0)
        continue;
      cur.push_back(d);
      rec(rest / d, left - 1);
      cur.pop_back();
    }
  };
  if (k >= 1)
    rec(n, k);
  return out;
}

PatternPlan make_plan(std::uint64_t n) {
  PatternPlan plan;
  plan.n = n;
  plan.omega = n >= 2 ? omega(n) : 0;
  if (n >= 2)
    plan.classes = enumerate_reversal_classes(n);
  return plan;
}

PatternPlan prime_index_discard(PatternPlan plan, std::uint64_t p, bool hypothesis_asserted) {
  if (!hypothesis_asserted)
    throw Error(ErrorCode::PreconditionFailed,
                "prime-index discard needs a multifold-factorizable subgroup of index " +
                    std::to_string(p));
  if (plan.n % p != 0)
    return plan;
  std::vector<Word> kept;
  for (auto &w : plan.classes) {
    if (!w.empty() && (w.front() == p || w.back() == p))
      plan.discarded.push_back({w, "prime-index lift"});
    else
      kept.push_back(std::move(w));
  }
  plan.classes = std::move(kept);
  return plan;
}

} // namespace factorix
