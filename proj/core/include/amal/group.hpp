// amal — classification of simplicial amalgams of finite groups
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "amal/config.hpp"
#include "amal/perm.hpp"

namespace amal {

/// An explicit finite group on element indices 0..order-1, identity at 0.
///
/// Small groups carry a dense multiplication table. Groups built from
/// permutation generators additionally keep every element as a permutation;
/// beyond the dense-table threshold multiplication composes those
/// permutations directly, so a group like SL4(2) (order 20160) stays cheap
/// to hold in memory.
class FiniteGroup {
 public:
  /// Validates `table` as a group (identity at 0, Latin square, inverses,
  /// associativity via Light's test) and takes ownership of it.
  static FiniteGroup from_table(std::vector<std::vector<Elt>> table);

  /// Closure of permutation generators under composition, identity first.
  /// Element order within the group is the BFS discovery order, which makes
  /// construction deterministic.
  static FiniteGroup from_generators(std::size_t degree, const std::vector<Perm>& generators,
                                     const Budgets& budgets = {});

  /// Group whose elements are the given permutations (must already be closed
  /// and contain the identity). Used for subgroups cut out of a larger
  /// permutation group.
  static FiniteGroup from_closed_perms(std::vector<Perm> elements);

  std::size_t order() const { return order_; }

  Elt mul(Elt a, Elt b) const {
    return table_.empty() ? perm_mul(a, b) : table_[a * order_ + b];
  }

  Elt inv(Elt a) const { return inverse_[a]; }

  static constexpr Elt identity = 0;

  std::uint32_t element_order(Elt a) const { return element_orders_[a]; }
  const std::vector<std::uint32_t>& element_orders() const { return element_orders_; }

  /// Conjugate b^a = a^-1 * b * a.
  Elt conj(Elt b, Elt a) const { return mul(mul(inv(a), b), a); }

  bool has_perms() const { return !perms_.empty(); }
  std::size_t degree() const { return degree_; }
  const Perm& perm_of(Elt a) const { return perms_[a]; }
  const std::vector<Perm>& perms() const { return perms_; }

  /// Index of a permutation in this group, or nullopt.
  std::optional<Elt> index_of_perm(const Perm& p) const;

  const std::optional<std::vector<std::string>>& labels() const { return labels_; }
  void set_labels(std::vector<std::string> labels);

  /// Human-readable name of an element (label if present, else "#idx").
  std::string label_of(Elt a) const;

  bool same_table(const FiniteGroup& other) const;

  /// A small generating set, greedily chosen; deterministic.
  std::vector<Elt> generating_set() const;

  /// All elements commuting with a.
  std::size_t centralizer_size(Elt a) const;

 private:
  FiniteGroup() = default;
  void finish_construction();  // inverses + element orders

  std::size_t order_ = 0;
  std::vector<Elt> table_;  // dense order x order, empty when perm-backed only
  std::vector<Perm> perms_;
  std::size_t degree_ = 0;
  std::unordered_map<Perm, Elt, PermHash> perm_index_;
  std::vector<Elt> inverse_;
  std::vector<std::uint32_t> element_orders_;
  std::optional<std::vector<std::string>> labels_;

  Elt perm_mul(Elt a, Elt b) const;

  /// Dense tables are built up to this order; larger groups must be
  /// permutation-backed.
  static constexpr std::size_t kDenseTableCap = 4096;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// A subgroup of `parent`, stored as the sorted list of member indices.
struct Subgroup {
  GroupPtr parent;
  std::vector<Elt> members;          // sorted ascending, contains 0
  std::vector<std::uint8_t> member_mask;  // size |parent|

  bool contains(Elt a) const { return member_mask[a] != 0; }
  std::size_t size() const { return members.size(); }

  /// Position of `a` in `members`; a must be a member.
  Elt position_of(Elt a) const;

  /// The subgroup as a FiniteGroup of its own (members reindexed by their
  /// position in `members`), together with the member list as the embedding.
  FiniteGroup as_group() const;
};

/// Smallest subgroup of G containing `seed`.
Subgroup subgroup_closure(const GroupPtr& G, const std::vector<Elt>& seed);

/// Intersection of subgroups of the same parent.
Subgroup subgroup_intersection(const Subgroup& a, const Subgroup& b);

/// The center of G.
Subgroup center(const GroupPtr& G);

/// A total map between two finite groups. `map[a]` is the image of a.
struct GroupHom {
  GroupPtr dom;
  GroupPtr cod;
  std::vector<Elt> map;
  bool injective = false;

  Elt operator()(Elt a) const { return map[a]; }

  static GroupHom identity_on(const GroupPtr& G);

  /// Image of the whole domain, as a Subgroup of the codomain.
  Subgroup image() const;

  /// Inverse of the corestriction onto the image: defined on image elements
  /// only, -1 (as Elt max) elsewhere. Requires `injective`.
  std::vector<Elt> partial_inverse() const;
};

/// Outcome of checking a hom: either ok, or a description of the first
/// violation found.
struct HomReport {
  bool ok = true;
  bool injective = false;
  std::string violation;  // empty when ok
};

/// Checks multiplicativity, map(0) = 0, and (if claimed) injectivity.
HomReport validate_hom(const GroupHom& h);

/// g after f: (g . f)(x) = g(f(x)). Requires f.cod == g.dom (same object or
/// equal tables).
GroupHom compose_homs(const GroupHom& g, const GroupHom& f);

/// Pointwise equality of two homs with equal domains.
bool homs_equal(const GroupHom& a, const GroupHom& b);

}  // namespace amal
