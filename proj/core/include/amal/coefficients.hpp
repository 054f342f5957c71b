// amal — classification of simplicial amalgams of finite groups
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "amal/amalgam.hpp"

namespace amal {

/// The group attached to a simplex of a coefficient system. `table` is the
/// group structure the cochain machinery computes with; `auts` carries the
/// actual automorphism permutations when the system was built from an
/// amalgam (subsystems and quotients have no such payload).
struct CoeffGroup {
  GroupPtr table;
  std::shared_ptr<const AutGroup> auts;
};

/// A coefficient system on a simplicial complex: a group per simplex and a
/// covariant connecting homomorphism alpha^sigma_tau : A_sigma -> A_tau per
/// covering pair, coherent on diamonds. Alphas are materialized as full
/// index maps since the cohomology machinery iterates them heavily.
class CoefficientSystem {
 public:
  CoefficientSystem(ComplexPtr cx, std::vector<CoeffGroup> groups,
                    std::map<std::pair<int, int>, std::vector<Elt>> alphas)
      : cx_(std::move(cx)), groups_(std::move(groups)), alphas_(std::move(alphas)) {}

  const ComplexPtr& complex() const { return cx_; }
  const CoeffGroup& at(int simplex_id) const { return groups_[simplex_id]; }
  const GroupPtr& table(int simplex_id) const { return groups_[simplex_id].table; }
  std::size_t size() const { return groups_.size(); }

  /// The stored index map for a covering pair.
  const std::vector<Elt>& alpha_cover(int sigma, int tau) const;

  /// Composite alpha along any face relation (identity when sigma == tau).
  std::vector<Elt> alpha(int sigma, int tau) const;

  const std::map<std::pair<int, int>, std::vector<Elt>>& alphas() const { return alphas_; }

 private:
  ComplexPtr cx_;
  std::vector<CoeffGroup> groups_;
  std::map<std::pair<int, int>, std::vector<Elt>> alphas_;
};

using CoeffPtr = std::shared_ptr<const CoefficientSystem>;

/// The coefficient system A0 of an amalgam: A_sigma is the group of
/// automorphisms of G_sigma stabilizing every coface image, and alpha is
/// restriction along the connecting monomorphism. Budget exhaustion names
/// the offending simplex.
CoeffPtr coefficient_system_of(const Amalgam& G0, const Budgets& budgets = {});

struct SystemReport {
  bool ok = true;
  std::string violation;
};

/// Homomorphism and diamond-coherence checks on every alpha.
SystemReport validate_system(const CoefficientSystem& A);

/// Per-simplex normal subgroups preserved by the alphas.
struct NormalSubsystem {
  CoeffPtr parent;
  std::vector<std::vector<Elt>> members;  // per simplex, sorted indices into A_sigma

  /// The subsystem as a coefficient system of its own (members reindexed).
  CoeffPtr as_system() const;
};

/// Validates normality and alpha-invariance of the given member sets.
NormalSubsystem make_normal_subsystem(const CoeffPtr& A, std::vector<std::vector<Elt>> members);

/// The inner subsystem of a triangle amalgam: N_sigma is conjugation of
/// G_sigma by the image of the top group. Verifies that each alpha restricts
/// to an isomorphism N_sigma -> N_tau and fails loudly when the input does
/// not satisfy that (the construction does not hold for every amalgam).
NormalSubsystem inner_subsystem(const CoeffPtr& A, const Amalgam& G0);

/// Quotient system A/N with canonical minimal-index coset representatives.
class QuotientSystem {
 public:
  QuotientSystem(const CoeffPtr& A, const NormalSubsystem& N);

  const CoeffPtr& parent() const { return parent_; }
  const CoeffPtr& system() const { return system_; }

  /// Coset (= quotient element index) of an A_sigma element.
  Elt coset_of(int simplex_id, Elt a) const { return coset_of_[simplex_id][a]; }
  /// Canonical representative of a quotient element inside A_sigma.
  Elt rep_of(int simplex_id, Elt q) const { return rep_of_[simplex_id][q]; }

 private:
  CoeffPtr parent_;
  CoeffPtr system_;
  std::vector<std::vector<Elt>> coset_of_;
  std::vector<std::vector<Elt>> rep_of_;
};

QuotientSystem quotient_system(const CoeffPtr& A, const NormalSubsystem& N);

}  // namespace amal
