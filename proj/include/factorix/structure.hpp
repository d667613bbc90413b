#pragma once

#include <optional>
#include <span>
#include <vector>

#include "factorix/factor_set.hpp"
#include "factorix/group.hpp"

namespace factorix {

/// A subgroup of a GroupTable, held as its member set plus generators.
class Subgroup {
public:
  Subgroup() = default;
  /// Closure of `generators` inside `parent`.
  Subgroup(GroupPtr parent, std::vector<Elem> generators);
  /// Wraps a member set already known to be closed. Checked.
  static Subgroup from_members(GroupPtr parent, FactorSet members, std::vector<Elem> generators);
  static Subgroup whole(GroupPtr parent);
  static Subgroup trivial(GroupPtr parent);

  const GroupTable &parent() const { return *parent_; }
  const GroupPtr &parent_ptr() const noexcept { return parent_; }
  const FactorSet &members() const noexcept { return members_; }
  std::size_t order() const noexcept { return members_.size(); }
  std::span<const Elem> generators() const noexcept { return generators_; }
  bool contains(Elem e) const noexcept { return members_.contains(e); }

private:
  GroupPtr parent_;
  FactorSet members_;
  std::vector<Elem> generators_;
};

/// Closure of `generators`; nullopt as soon as it exceeds `cap` elements.
std::optional<Bitset> closure(const GroupTable &g, std::span<const Elem> generators,
                              std::size_t cap = SIZE_MAX);

/// |<s>|: order of the subgroup generated by a set.
std::size_t generated_order(const GroupTable &g, std::span<const Elem> s);

/// One representative per right coset Hx; each is the least index of its
/// coset, so the identity represents H itself.
std::vector<Elem> right_transversal(const Subgroup &h);
/// Mirror of right_transversal for left cosets xH.
std::vector<Elem> left_transversal(const Subgroup &h);

/// For each element, the position in right_transversal(h) of its coset Hx.
std::vector<std::size_t> right_coset_index(const Subgroup &h, std::span<const Elem> transversal);
std::vector<std::size_t> left_coset_index(const Subgroup &h, std::span<const Elem> transversal);

struct DoubleCosetDecomposition {
  std::vector<Elem> representatives;
  std::vector<std::size_t> coset_sizes;
};

/// The (A,B) double cosets A t B, representatives in increasing index.
DoubleCosetDecomposition double_cosets(const Subgroup &a, const Subgroup &b);

/// True iff x^-1 A x ∩ B = {e} for every x in the parent.
bool conjugate_intersection_trivial(const Subgroup &a, const Subgroup &b);

bool is_normal(const Subgroup &n);

struct Quotient {
  GroupPtr table;                 ///< abstract group of cosets, identity coset at 0
  std::vector<Elem> projection;   ///< parent index -> coset index
  std::vector<Elem> coset_reps;   ///< coset index -> least parent element
};

/// G/N with the induced multiplication. Throws NotNormal.
Quotient quotient_group(const Subgroup &n);

/// Deterministic closure search (cyclic, then 2- and 3-generator closures);
/// returns the subgroup of order m with the least sorted member list among
/// those found at the first level that finds any.
std::optional<Subgroup> find_subgroup_of_order(const GroupPtr &g, std::size_t m);

/// A Sylow p-subgroup grown by adjoining p-elements in index order.
/// Throws NoSuchPrime when p is not a prime dividing |G|.
Subgroup sylow_subgroup(const GroupPtr &g, int p);

/// The subgroup as a group of its own. Indices follow member order, so
/// index i of the result is members()[i] of the parent.
GroupPtr subgroup_table(const Subgroup &h);

/// Least element of each conjugacy class, in increasing order.
std::vector<Elem> conjugacy_class_representatives(const GroupTable &g);

} // namespace factorix
