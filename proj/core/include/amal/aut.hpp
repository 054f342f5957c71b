// amal — classification of simplicial amalgams of finite groups
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "amal/group.hpp"

namespace amal {

/// A group of automorphisms of a base group, each stored as a permutation of
/// the base's element indices.
///
/// Composition convention, used everywhere in this library: the product
/// f * g applies f first, i.e. (f * g)(x) = g(f(x)). The `structure()`
/// group realizes exactly this product on automorphism indices.
class AutGroup {
 public:
  /// Takes the (closed) set of automorphism permutations, sorts it into
  /// canonical order (identity first, then lexicographic) and builds the
  /// composition structure.
  AutGroup(GroupPtr base, std::vector<Perm> elements);

  const GroupPtr& base() const { return base_; }
  std::size_t order() const { return structure_->order(); }

  /// The i-th automorphism as a permutation of base element indices.
  const Perm& aut(Elt i) const { return structure_->perm_of(i); }

  Elt index_of(const Perm& p) const;
  std::optional<Elt> try_index_of(const Perm& p) const { return structure_->index_of_perm(p); }

  /// Positions of a generating set inside the element list.
  const std::vector<Elt>& generators() const { return generators_; }

  /// The composition group on automorphism indices.
  const GroupPtr& structure() const { return structure_; }

  Elt mul(Elt a, Elt b) const { return structure_->mul(a, b); }
  Elt inv(Elt a) const { return structure_->inv(a); }

  /// The i-th automorphism as a GroupHom base -> base.
  GroupHom as_hom(Elt i) const;

 private:
  GroupPtr base_;
  GroupPtr structure_;
  std::vector<Elt> generators_;
};

/// All automorphisms of G mapping each listed subgroup onto itself setwise.
///
/// Backtracking over the images of a small generating sequence, pruned by
/// element invariants (order, centralizer size, conjugacy class size,
/// membership pattern in the stabilized subgroups) and by incremental
/// multiplicativity checks on the partially generated subgroup. Throws
/// BudgetError once `budgets.aut_nodes` partial assignments were tried.
AutGroup automorphisms(const GroupPtr& G, const std::vector<Subgroup>& stabilized = {},
                       const Budgets& budgets = {});

/// The conjugation maps x -> g^-1 x g for g in `source` (default: all of G).
AutGroup inner_automorphisms(const GroupPtr& G, const std::optional<Subgroup>& source = {});

/// Restriction along an injective hom: given psi: T -> S and an automorphism
/// f of S with f(im psi) = im psi, returns psi^-1 . f . psi as a permutation
/// of T's indices. Throws ValidationError when f does not stabilize im psi.
Perm ad_conjugate(const GroupHom& psi, const Perm& f);

/// One isomorphism A -> B, or nullopt if the groups are not isomorphic.
std::optional<Perm> find_isomorphism(const GroupPtr& A, const GroupPtr& B,
                                     const Budgets& budgets = {});

}  // namespace amal
