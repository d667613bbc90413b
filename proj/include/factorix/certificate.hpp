#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "factorix/factor_set.hpp"
#include "factorix/group.hpp"
#include "factorix/structure.hpp"

namespace factorix {

/// An ordered list of factors claimed to satisfy G = A1 A2 ... Ak with
/// unique representation. Singleton factors may appear transiently while
/// lemmas are composed; strip_singletons removes them before output.
struct Certificate {
  GroupPtr group;
  std::vector<FactorSet> factors;

  std::vector<std::size_t> pattern() const;
  /// Every factor contains the identity.
  bool normalized() const;

  friend bool operator==(const Certificate &a, const Certificate &b) {
    return a.factors == b.factors;
  }
  friend bool operator<(const Certificate &a, const Certificate &b) {
    return a.factors < b.factors;
  }
};

struct Verdict {
  bool valid = false;
  /// Length of the shortest prefix whose product collides (0 when the
  /// failure is a coverage or shape problem rather than a collision).
  std::size_t failing_prefix = 0;
  std::string detail;

  explicit operator bool() const noexcept { return valid; }
};

/// {st : s in S, t in T} when all |S|·|T| products are distinct.
std::optional<FactorSet> product_distinct(const GroupTable &g, const FactorSet &s,
                                          const FactorSet &t);

Verdict verify_certificate(const Certificate &c);

/// Brute-force count of group elements with exactly one representation
/// as a1...ak. Independent of the left-fold used by verify_certificate.
std::size_t count_unique_products(const Certificate &c);

/// Conjugation shift B_i = c_{i-1} A_i c_i^{-1}, c_i = a_1...a_i with a_i
/// the least element of A_i. Every output factor contains the identity.
Certificate normalize(const Certificate &c);

/// A_k^{-1} ... A_1^{-1}.
Certificate reverse(const Certificate &c);

enum class Side { Left, Right };

/// Certificate of H (over subgroup_table(h)) extended to G by a right
/// transversal appended last, or a left transversal prepended first.
Certificate lift_by_transversal(const Certificate &of_h, const Subgroup &h, Side side);

/// Certificate of G/N (over quotient_group(n).table) pulled back through
/// least coset representatives, with N inserted before factor `position`.
/// Throws NotNormal and InvalidPosition.
Certificate lift_by_quotient(const Certificate &of_quotient, const Subgroup &n,
                             std::size_t position);

/// Factors of a_cert, then the double coset representatives T, then the
/// factors of b_cert. Throws ConditionFailed unless A^x ∩ B = {e} for all x.
Certificate compose_sandwich(const Subgroup &a, const Certificate &a_cert, const Subgroup &b,
                             const Certificate &b_cert);

enum class EndPosition { First, Last };

/// Keep a candidate end factor iff |<s>| is a multiple of |s|.
bool divisibility_prune(const GroupTable &g, const FactorSet &s, EndPosition position);

/// Maps a certificate of subgroup_table(h) onto parent indices.
std::vector<FactorSet> embed_factors(const Certificate &of_h, const Subgroup &h);

/// Replaces factor `index` by `parts`, whose set product must equal it.
Certificate refine_factor(const Certificate &c, std::size_t index, std::vector<FactorSet> parts);

/// Merges factors index and index+1 into their (distinct) product.
Certificate merge_adjacent(const Certificate &c, std::size_t index);

Certificate strip_singletons(const Certificate &c);

/// The single-factor certificate [G].
Certificate whole_group_certificate(const GroupPtr &g);

} // namespace factorix
