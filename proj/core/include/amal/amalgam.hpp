// amal — classification of simplicial amalgams of finite groups
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "amal/aut.hpp"
#include "amal/complex.hpp"
#include "amal/group.hpp"

namespace amal {

/// A simplicial amalgam: a finite group per simplex and an injective
/// connecting hom G_tau -> G_sigma for every covering face pair sigma < tau,
/// coherent on diamonds. Only covering-pair maps are stored; general
/// connecting maps are derived by composition.
class Amalgam {
 public:
  Amalgam(ComplexPtr cx, std::vector<GroupPtr> groups,
          std::map<std::pair<int, int>, GroupHom> covers);

  const ComplexPtr& complex() const { return cx_; }
  const GroupPtr& group(int simplex_id) const { return groups_[simplex_id]; }
  const std::vector<GroupPtr>& groups() const { return groups_; }

  /// The stored map for a covering pair.
  const GroupHom& cover(int sigma, int tau) const;
  const std::map<std::pair<int, int>, GroupHom>& covers() const { return covers_; }

  /// Composite connecting map G_tau -> G_sigma for any face pair
  /// sigma subseteq tau (identity when sigma == tau).
  GroupHom connecting_map(int sigma, int tau) const;

  /// Image of connecting_map(sigma, tau) inside G_sigma.
  Subgroup image_subgroup(int sigma, int tau) const;

 private:
  ComplexPtr cx_;
  std::vector<GroupPtr> groups_;
  std::map<std::pair<int, int>, GroupHom> covers_;
};

using AmalgamPtr = std::shared_ptr<const Amalgam>;

/// Validates (injectivity of every cover, diamond coherence) and builds.
/// Throws ValidationError naming the offending map or diamond.
AmalgamPtr build_amalgam(ComplexPtr cx, std::vector<GroupPtr> groups,
                         std::map<std::pair<int, int>, GroupHom> covers);

/// An isomorphism of amalgams over a common complex: a bijective component
/// per simplex, natural with respect to all connecting maps.
struct AmalgamIso {
  AmalgamPtr source;
  AmalgamPtr target;
  std::vector<GroupHom> components;  // by simplex id
};

/// Outcome of verifying an AmalgamIso.
struct IsoReport {
  bool ok = true;
  std::string violation;  // names the failing component or square
};

/// Verifies bijectivity of every component and every naturality square
/// phi_sigma . phi^sigma_tau(1) = phi^sigma_tau(2) . phi_tau.
IsoReport check_iso(const AmalgamIso& iso);

/// True iff the two amalgams share their complex, have equal groups per
/// simplex and equal image subgroups for every face pair.
bool same_type(const Amalgam& G, const Amalgam& G0);

/// True iff for every simplex tau of rank >= 1 the cover along the least
/// face bar(tau) equals the reference map. When that holds, also
/// cross-checks that connecting maps agree whenever max(sigma) = max(tau).
bool is_normalized(const Amalgam& G, const Amalgam& G0);

/// The normalized amalgam isomorphic to G (of type G0), with the
/// isomorphism, built by rank induction.
struct NormalizationResult {
  AmalgamPtr amalgam;
  AmalgamIso iso;  // G -> amalgam
};
NormalizationResult normalize(const Amalgam& G, const Amalgam& G0);

/// G extended over a larger complex: new simplices carry the trivial group.
AmalgamPtr trivial_extension(const Amalgam& G, const ComplexPtr& bigger);

/// Extension of an isomorphism along trivial_extension (identity on the new
/// simplices).
AmalgamIso trivial_extension(const AmalgamIso& iso, const ComplexPtr& bigger);

/// The amalgam of intersections of vertex stabilizers over the full simplex
/// on the vertex set; cover maps are the subgroup inclusions.
AmalgamPtr parabolic_amalgam(const GroupPtr& G,
                             const std::map<int, Subgroup>& vertex_stabilizers);

// ---------------------------------------------------------------------------
// Exhaustive oracle. Deliberately ignorant of the cohomology machinery: it
// enumerates raw connecting-map choices and searches for isomorphisms by
// direct backtracking, so its verdicts can cross-check the classification.
// ---------------------------------------------------------------------------

/// Every amalgam of type G0. A cover map that keeps all composite images in
/// place is psi . a for an automorphism a of G_tau stabilizing every coface
/// image, so each amalgam is stored as one constrained-automorphism index
/// per covering pair and materialized on demand.
class OracleEnumeration {
 public:
  std::size_t size() const { return tuples_.size(); }
  Amalgam materialize(std::size_t i) const;
  const std::vector<std::vector<Elt>>& tuples() const { return tuples_; }
  const AmalgamPtr& reference() const { return reference_; }

  /// Index of the tuple equal to G0 itself (all-identity choices).
  std::size_t reference_index() const;

 private:
  friend OracleEnumeration oracle_enumerate_type(const AmalgamPtr&, const Budgets&);
  friend class OracleClassification;

  AmalgamPtr reference_;
  std::vector<std::shared_ptr<const AutGroup>> full_auts_;  // by simplex id (domains only)
  std::vector<std::vector<Elt>> tuples_;  // per amalgam: aut index per cover pair
  std::unordered_map<std::vector<Elt>, std::size_t, PermHash> tuple_index_;
};

OracleEnumeration oracle_enumerate_type(const AmalgamPtr& G0, const Budgets& budgets = {});

/// The enumeration partitioned into isomorphism classes by sweeping the
/// orbits of per-simplex automorphism moves.
class OracleClassification {
 public:
  OracleClassification(OracleEnumeration enumeration, const Budgets& budgets = {});

  const OracleEnumeration& enumeration() const { return enumeration_; }
  std::size_t class_count() const { return representatives_.size(); }
  std::size_t class_of(std::size_t amalgam_index) const { return class_of_[amalgam_index]; }
  /// First enumerated member of each class.
  const std::vector<std::size_t>& representatives() const { return representatives_; }
  const std::vector<std::size_t>& class_sizes() const { return class_sizes_; }

 private:
  OracleEnumeration enumeration_;
  std::vector<std::size_t> class_of_;
  std::vector<std::size_t> representatives_;
  std::vector<std::size_t> class_sizes_;
};

/// Exhaustive isomorphism search between amalgams over the same complex.
/// Vertex components are chosen from candidate isomorphism lists; every
/// higher component is forced through a naturality square and the remaining
/// squares are verified. Returns a witness or nullopt.
std::optional<AmalgamIso> oracle_isomorphic(const AmalgamPtr& G1, const AmalgamPtr& G2,
                                            const Budgets& budgets = {});

}  // namespace amal
