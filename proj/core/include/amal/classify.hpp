// amal — classification of simplicial amalgams of finite groups
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "amal/cohomology.hpp"

namespace amal {

/// The 1-cocycle of a normalized amalgam of type G0: per edge {i<j},
/// a_ij = (phi^i_ij)^-1 . psi^i_ij, read off as an element of A_ij.
Cochain1 cocycle_of(const Amalgam& G, const Amalgam& G0, const CoefficientSystem& A0);

/// The unique normalized amalgam of type G0 whose cocycle is z:
/// phi^sigma_tau = psi^sigma_tau when max(sigma) = max(tau), otherwise
/// (psi^j_sigma)^-1 . psi^j_jk . a_jk^-1 . psi^jk_tau with j = max(sigma),
/// k = max(tau). Rejects non-cocycles up front.
AmalgamPtr amalgam_of(const Cochain1& z, const Amalgam& G0, const CoefficientSystem& A0);

/// The isomorphism amalgam_of(z1) -> amalgam_of(z2) induced by a coboundary
/// tuple f with z1 = act(z2, f): components phi_tau = alpha^max(tau)_tau(f).
AmalgamIso iso_from_coboundary(const Cochain0& f, const Cochain1& z1, const Cochain1& z2,
                               const Amalgam& G0, const CoefficientSystem& A0);

/// The full classification of amalgams of type G0: one normalized
/// representative per H^1 class, base point mapped to G0 itself.
struct Classification {
  AmalgamPtr reference;
  CoeffPtr system;
  CohomologySet cohomology;
  std::vector<AmalgamPtr> representatives;  // by class index
  std::size_t base_class = 0;

  /// Explicit isomorphism between the normalized amalgams of two
  /// cohomologous cocycles, assembled from the orbit sweep's move paths.
  AmalgamIso witness(const Cochain1& z_a, const Cochain1& z_b) const;
};

Classification classify(const AmalgamPtr& G0, const Budgets& budgets = {});

/// Goldschmidt's lemma on the 1-simplex: double cosets of the restricted
/// automorphism images inside A_12, with the explicit orbit <-> coset
/// bijection against H^1.
struct GoldschmidtResult {
  CoeffPtr system;
  CohomologySet h1_classes;
  std::vector<Elt> coset_of;           // per element of A_12
  std::vector<Elt> representatives;    // minimal element of each double coset
  std::vector<std::size_t> class_to_coset;  // H^1 class index -> coset index
  std::size_t count() const { return representatives.size(); }
};

GoldschmidtResult goldschmidt(const AmalgamPtr& G0, const Budgets& budgets = {});

}  // namespace amal
