// amal — classification of simplicial amalgams of finite groups
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "amal/coefficients.hpp"

namespace amal {

/// Cochains assign an element of A_sigma to every simplex of the given rank,
/// in the canonical (lexicographic) simplex order.
struct Cochain0 {
  std::vector<Elt> values;  // by vertex position
  bool operator==(const Cochain0&) const = default;
};
struct Cochain1 {
  std::vector<Elt> values;  // by edge position
  bool operator==(const Cochain1&) const = default;
};
struct Cochain2 {
  std::vector<Elt> values;  // by triangle position
  bool operator==(const Cochain2&) const = default;
};

/// Composition convention: products inside the coboundary formulas are
/// composition of automorphisms, written here through the group tables
/// whose mul(f, g) applies f first. A right-to-left product x1 x2 ... xk
/// (xk applied first) therefore folds as mul(xk, mul(..., mul(x2, x1))).

/// d0(a) per edge {i<j}: alpha^j(a_j^-1) . alpha^i(a_i).
Cochain1 d0(const CoefficientSystem& A, const Cochain0& a);

/// d1(b) per triangle {i<j<k}:
/// alpha^jk(b_jk^-1) . alpha^ik(b_ik) . alpha^ij(b_ij^-1).
Cochain2 d1(const CoefficientSystem& A, const Cochain1& b);

/// The right action of C^0 on C^1 per edge {i<j}:
/// alpha^j(a_j^-1) . b_ij . alpha^i(a_i).
Cochain1 act(const CoefficientSystem& A, const Cochain1& b, const Cochain0& a);

/// Componentwise product c with act(act(z, a), b) = act(z, c) for all z.
Cochain0 action_product(const CoefficientSystem& A, const Cochain0& a, const Cochain0& b);

Cochain0 identity_cochain0(const CoefficientSystem& A);
Cochain1 identity_cochain1(const CoefficientSystem& A);

bool is_identity(const Cochain1& b);
bool is_identity(const Cochain2& b);

/// True iff d1(b) is the identity 2-cochain.
bool is_cocycle(const CoefficientSystem& A, const Cochain1& b);

/// All 1-cocycles, in lexicographically ascending order. Depth-first over
/// edges; once two edges of a triangle are fixed the third is confined to an
/// alpha fiber, so constraints prune as early as possible.
std::vector<Cochain1> cocycles_z1(const CoefficientSystem& A, const Budgets& budgets = {});

/// H^0 = Z^0: all a with d0(a) = id, i.e. the alpha-equalizer tuples.
struct H0Result {
  std::vector<Cochain0> elements;        // canonical (lex ascending) order
  GroupPtr group;                        // componentwise-product structure
  std::size_t index_of(const Cochain0& a) const;
  std::unordered_map<std::vector<Elt>, std::size_t, PermHash> index;
};
H0Result h0(const CoefficientSystem& A, const Budgets& budgets = {});

/// A C^0-orbit on Z^1. The representative is the lexicographically smallest
/// cocycle of the orbit.
struct CohomologyClass {
  Cochain1 representative;
  std::size_t orbit_size = 0;
  bool base_point = false;
};

/// H^1: the orbit set of C^0 acting on Z^1, computed by breadth-first
/// generator sweeps; never enumerates C^0 itself.
class CohomologySet {
 public:
  CoeffPtr system;
  std::vector<CohomologyClass> classes;
  std::vector<Cochain1> cocycles;        // all of Z^1, ascending
  std::vector<std::size_t> class_of;     // aligned to `cocycles`

  std::size_t size() const { return classes.size(); }
  std::size_t class_of_cocycle(const Cochain1& z) const;
  std::size_t base_point_class() const;

  /// A C^0 tuple f with act(representative(class_of(z)), f) = z.
  Cochain0 witness_from_representative(const Cochain1& z) const;

  // BFS bookkeeping for witness reconstruction.
  struct Pred {
    std::size_t from = 0;
    int vertex_pos = -1;  // -1 marks an orbit root
    Elt gen = 0;
  };
  std::vector<Pred> preds;
  std::unordered_map<std::vector<Elt>, std::size_t, PermHash> cocycle_index;
};

CohomologySet h1(const CoeffPtr& A, const Budgets& budgets = {});

/// The H^0(A/N) action on H^1(N): lift, act in A, land back in N.
/// Returns the class index of [n]^a_bar.
std::size_t h0_action(const CoeffPtr& A, const NormalSubsystem& N, const QuotientSystem& Q,
                      const Cochain0& a_bar, std::size_t h1N_class, const CohomologySet& h1N);

/// The six-term exact sequence of pointed sets
/// 0 -> H0(N) -> H0(A) -> H0(A/N) -> H1(N) -> H1(A) -> H1(A/N),
/// with every map materialized and pointed-set exactness verified at the
/// four interior nodes. Exactness failure throws InternalError.
struct ExactSequence {
  H0Result h0N, h0A, h0Q;
  CohomologySet h1N, h1A, h1Q;
  std::vector<std::size_t> i0;      // H0(N) -> H0(A), by element index
  std::vector<std::size_t> kappa0;  // H0(A) -> H0(A/N)
  std::vector<std::size_t> delta;   // H0(A/N) -> H1(N), by class index
  std::vector<std::size_t> i1;      // H1(N) -> H1(A)
  std::vector<std::size_t> kappa1;  // H1(A) -> H1(A/N)
};
ExactSequence exact_sequence(const CoeffPtr& A, const NormalSubsystem& N,
                             const Budgets& budgets = {});

/// H^1 computed through the quotient by a subsystem whose alphas restrict to
/// isomorphisms (2-simplex only). When the direct computation fits the
/// budget as well, the counts are asserted equal.
struct QuotientH1 {
  CohomologySet over_quotient;
  std::optional<std::size_t> direct_count;  // |H^1(A)| when it was affordable
};
QuotientH1 h1_via_quotient(const CoeffPtr& A, const NormalSubsystem& N,
                           const Budgets& budgets = {});

/// The triangle reduction: orbits of the quotient C^0 on the constrained
/// quotient triples. Exactly H^1 of the quotient system.
CohomologySet triangular_reduced(const QuotientSystem& Q, const Budgets& budgets = {});

}  // namespace amal
