// amal — classification of simplicial amalgams of finite groups
// SPDX-License-Identifier: Apache-2.0

#include "amal/coefficients.hpp"

#include <algorithm>
#include <numeric>

namespace amal {

namespace {

std::string pair_name(const SimplicialComplex& cx, int sigma, int tau) {
  return "{" + simplex_name(cx.simplex(sigma)) + "} <= {" + simplex_name(cx.simplex(tau)) + "}";
}

}  // namespace

const std::vector<Elt>& CoefficientSystem::alpha_cover(int sigma, int tau) const {
  auto it = alphas_.find({sigma, tau});
  if (it == alphas_.end())
    throw InternalError("no alpha stored for " + pair_name(*cx_, sigma, tau));
  return it->second;
}

std::vector<Elt> CoefficientSystem::alpha(int sigma, int tau) const {
  if (sigma == tau) {
    std::vector<Elt> id(groups_[sigma].table->order());
    std::iota(id.begin(), id.end(), 0u);
    return id;
  }
  if (!cx_->is_face(sigma, tau))
    throw ValidationError("not a face relation: " + pair_name(*cx_, sigma, tau));
  // Ascend from sigma to tau, adding the smallest missing vertex each step.
  const Simplex& target = cx_->simplex(tau);
  std::vector<Elt> acc(groups_[sigma].table->order());
  std::iota(acc.begin(), acc.end(), 0u);
  int current = sigma;
  while (current != tau) {
    Simplex next = cx_->simplex(current);
    for (int v : target)
      if (!std::binary_search(next.begin(), next.end(), v)) {
        next.insert(std::lower_bound(next.begin(), next.end(), v), v);
        break;
      }
    const int next_id = cx_->id_of(next);
    const std::vector<Elt>& step = alpha_cover(current, next_id);
    for (Elt& v : acc) v = step[v];
    current = next_id;
  }
  return acc;
}

CoeffPtr coefficient_system_of(const Amalgam& G0, const Budgets& budgets) {
  const SimplicialComplex& X = *G0.complex();
  std::vector<CoeffGroup> groups(X.size());
  for (std::size_t s = 0; s < X.size(); ++s) {
    std::vector<Subgroup> images;
    for (std::size_t t = 0; t < X.size(); ++t)
      if (t != s && X.is_face(static_cast<int>(s), static_cast<int>(t)))
        images.push_back(G0.image_subgroup(static_cast<int>(s), static_cast<int>(t)));
    try {
      groups[s].auts = std::make_shared<const AutGroup>(
          automorphisms(G0.group(static_cast<int>(s)), images, budgets));
    } catch (const BudgetError&) {
      throw BudgetError("automorphism search budget exceeded at simplex {" +
                        simplex_name(X.simplex(static_cast<int>(s))) + "}");
    }
    groups[s].table = groups[s].auts->structure();
  }

  std::map<std::pair<int, int>, std::vector<Elt>> alphas;
  for (const auto& [sigma, tau] : X.cover_pairs()) {
    const GroupHom& psi = G0.cover(sigma, tau);
    std::vector<Elt> a(groups[sigma].table->order());
    for (Elt i = 0; i < a.size(); ++i) {
      const Perm restricted = ad_conjugate(psi, groups[sigma].auts->aut(i));
      auto idx = groups[tau].auts->try_index_of(restricted);
      if (!idx)
        throw InternalError("restriction left the constrained automorphism group at " +
                            pair_name(X, sigma, tau));
      a[i] = *idx;
    }
    alphas[{sigma, tau}] = std::move(a);
  }
  return std::make_shared<const CoefficientSystem>(G0.complex(), std::move(groups),
                                                   std::move(alphas));
}

SystemReport validate_system(const CoefficientSystem& A) {
  SystemReport rep;
  const SimplicialComplex& X = *A.complex();
  for (const auto& [pair, a] : A.alphas()) {
    const FiniteGroup& dom = *A.table(pair.first);
    const FiniteGroup& cod = *A.table(pair.second);
    if (a.size() != dom.order()) {
      rep.ok = false;
      rep.violation = "alpha at " + pair_name(X, pair.first, pair.second) + " has wrong length";
      return rep;
    }
    if (a[FiniteGroup::identity] != FiniteGroup::identity) {
      rep.ok = false;
      rep.violation =
          "alpha at " + pair_name(X, pair.first, pair.second) + " moves the identity";
      return rep;
    }
    for (Elt x = 0; x < dom.order(); ++x)
      for (Elt y = 0; y < dom.order(); ++y)
        if (a[dom.mul(x, y)] != cod.mul(a[x], a[y])) {
          rep.ok = false;
          rep.violation = "alpha at " + pair_name(X, pair.first, pair.second) +
                          " is not multiplicative at (" + std::to_string(x) + ", " +
                          std::to_string(y) + ")";
          return rep;
        }
  }
  // Diamond coherence of ascents.
  for (std::size_t t = 0; t < X.size(); ++t) {
    const Simplex& tau = X.simplex(static_cast<int>(t));
    if (tau.size() < 3) continue;
    std::vector<int> facets;
    for (const Simplex& f : boundary(tau)) facets.push_back(X.id_of(f));
    for (std::size_t i = 0; i < facets.size(); ++i)
      for (std::size_t j = i + 1; j < facets.size(); ++j) {
        Simplex meet;
        std::set_intersection(X.simplex(facets[i]).begin(), X.simplex(facets[i]).end(),
                              X.simplex(facets[j]).begin(), X.simplex(facets[j]).end(),
                              std::back_inserter(meet));
        const int s = X.id_of(meet);
        const auto& lo_i = A.alpha_cover(s, facets[i]);
        const auto& lo_j = A.alpha_cover(s, facets[j]);
        const auto& hi_i = A.alpha_cover(facets[i], static_cast<int>(t));
        const auto& hi_j = A.alpha_cover(facets[j], static_cast<int>(t));
        for (Elt x = 0; x < lo_i.size(); ++x)
          if (hi_i[lo_i[x]] != hi_j[lo_j[x]]) {
            rep.ok = false;
            rep.violation = "alpha diamond incoherence above {" + simplex_name(meet) +
                            "} inside {" + simplex_name(tau) + "}";
            return rep;
          }
      }
  }
  return rep;
}

CoeffPtr NormalSubsystem::as_system() const {
  const SimplicialComplex& X = *parent->complex();
  std::vector<CoeffGroup> groups(X.size());
  std::vector<std::vector<Elt>> position(X.size());
  for (std::size_t s = 0; s < X.size(); ++s) {
    const FiniteGroup& A = *parent->table(static_cast<int>(s));
    const auto& mem = members[s];
    position[s].assign(A.order(), static_cast<Elt>(-1));
    for (Elt i = 0; i < mem.size(); ++i) position[s][mem[i]] = i;
    std::vector<std::vector<Elt>> table(mem.size(), std::vector<Elt>(mem.size()));
    for (Elt i = 0; i < mem.size(); ++i)
      for (Elt j = 0; j < mem.size(); ++j) table[i][j] = position[s][A.mul(mem[i], mem[j])];
    groups[s].table = std::make_shared<const FiniteGroup>(FiniteGroup::from_table(std::move(table)));
  }
  std::map<std::pair<int, int>, std::vector<Elt>> alphas;
  for (const auto& [pair, a] : parent->alphas()) {
    std::vector<Elt> restricted(members[pair.first].size());
    for (Elt i = 0; i < restricted.size(); ++i) {
      const Elt v = position[pair.second][a[members[pair.first][i]]];
      if (v == static_cast<Elt>(-1))
        throw InternalError("subsystem is not alpha-invariant at " +
                            pair_name(X, pair.first, pair.second));
      restricted[i] = v;
    }
    alphas[pair] = std::move(restricted);
  }
  return std::make_shared<const CoefficientSystem>(parent->complex(), std::move(groups),
                                                   std::move(alphas));
}

NormalSubsystem make_normal_subsystem(const CoeffPtr& A, std::vector<std::vector<Elt>> members) {
  const SimplicialComplex& X = *A->complex();
  if (members.size() != A->size()) throw ValidationError("one member set per simplex required");
  for (std::size_t s = 0; s < members.size(); ++s) {
    auto& mem = members[s];
    std::sort(mem.begin(), mem.end());
    mem.erase(std::unique(mem.begin(), mem.end()), mem.end());
    const FiniteGroup& G = *A->table(static_cast<int>(s));
    std::vector<char> in(G.order(), 0);
    for (Elt m : mem) {
      if (m >= G.order()) throw ValidationError("subsystem member out of range");
      in[m] = 1;
    }
    if (mem.empty() || mem[0] != FiniteGroup::identity)
      throw ValidationError("subsystem must contain the identity at simplex {" +
                            simplex_name(X.simplex(static_cast<int>(s))) + "}");
    for (Elt x : mem)
      for (Elt y : mem)
        if (!in[G.mul(x, y)])
          throw ValidationError("subsystem not closed at simplex {" +
                                simplex_name(X.simplex(static_cast<int>(s))) + "}");
    for (Elt a = 0; a < G.order(); ++a)
      for (Elt n : mem)
        if (!in[G.conj(n, a)])
          throw ValidationError("subsystem not normal at simplex {" +
                                simplex_name(X.simplex(static_cast<int>(s))) + "}");
  }
  for (const auto& [pair, a] : A->alphas()) {
    std::vector<char> in(A->table(pair.second)->order(), 0);
    for (Elt m : members[pair.second]) in[m] = 1;
    for (Elt m : members[pair.first])
      if (!in[a[m]])
        throw ValidationError("subsystem not preserved by alpha at " +
                              pair_name(X, pair.first, pair.second));
  }
  NormalSubsystem N;
  N.parent = A;
  N.members = std::move(members);
  return N;
}

NormalSubsystem inner_subsystem(const CoeffPtr& A, const Amalgam& G0) {
  const SimplicialComplex& X = *G0.complex();
  if (X.n_vertices() != 3 || X.size() != 7)
    throw ValidationError("inner subsystem requires the full triangle complex");
  if (A->complex()->simplices() != X.simplices())
    throw ValidationError("coefficient system and amalgam complexes disagree");
  const int top = X.id_of({1, 2, 3});

  std::vector<std::vector<Elt>> members(X.size());
  for (std::size_t s = 0; s < X.size(); ++s) {
    if (!A->at(static_cast<int>(s)).auts)
      throw ValidationError("inner subsystem needs a system built from the amalgam");
    const AutGroup& As = *A->at(static_cast<int>(s)).auts;
    const GroupPtr& G = G0.group(static_cast<int>(s));
    const Subgroup image = G0.image_subgroup(static_cast<int>(s), top);
    std::vector<char> seen(As.order(), 0);
    for (Elt g : image.members) {
      Perm p(G->order());
      for (Elt x = 0; x < p.size(); ++x) p[x] = G->conj(x, g);
      auto idx = As.try_index_of(p);
      if (!idx)
        throw InternalError("conjugation by a top-image element is not in A at simplex {" +
                            simplex_name(X.simplex(static_cast<int>(s))) + "}");
      seen[*idx] = 1;
    }
    for (Elt i = 0; i < As.order(); ++i)
      if (seen[i]) members[s].push_back(i);
  }

  NormalSubsystem N = make_normal_subsystem(A, std::move(members));

  // The construction only serves the triangle reduction when every alpha
  // restricts to an isomorphism between the N's; surface the failure.
  for (const auto& [pair, a] : A->alphas()) {
    const auto& from = N.members[pair.first];
    const auto& to = N.members[pair.second];
    std::vector<char> hit(A->table(pair.second)->order(), 0);
    std::size_t distinct = 0;
    for (Elt m : from) {
      if (!hit[a[m]]) {
        hit[a[m]] = 1;
        ++distinct;
      }
    }
    if (distinct != from.size() || from.size() != to.size())
      throw ValidationError("inner subsystem not isomorphic along alpha at " +
                            pair_name(X, pair.first, pair.second));
  }
  return N;
}

QuotientSystem::QuotientSystem(const CoeffPtr& A, const NormalSubsystem& N) : parent_(A) {
  if (N.parent.get() != A.get())
    throw ValidationError("subsystem does not belong to the given system");
  const SimplicialComplex& X = *A->complex();
  coset_of_.resize(A->size());
  rep_of_.resize(A->size());
  std::vector<CoeffGroup> groups(A->size());
  for (std::size_t s = 0; s < A->size(); ++s) {
    const FiniteGroup& G = *A->table(static_cast<int>(s));
    const auto& mem = N.members[s];
    // Canonical representative: smallest index in the coset.
    std::vector<Elt> rep(G.order(), static_cast<Elt>(-1));
    for (Elt a = 0; a < G.order(); ++a) {
      Elt best = a;
      for (Elt m : mem) best = std::min(best, G.mul(a, m));
      rep[a] = best;
    }
    std::vector<Elt> reps;
    for (Elt a = 0; a < G.order(); ++a)
      if (rep[a] == a) reps.push_back(a);
    std::vector<Elt> coset(G.order());
    for (Elt a = 0; a < G.order(); ++a)
      coset[a] = static_cast<Elt>(
          std::lower_bound(reps.begin(), reps.end(), rep[a]) - reps.begin());
    std::vector<std::vector<Elt>> table(reps.size(), std::vector<Elt>(reps.size()));
    for (Elt i = 0; i < reps.size(); ++i)
      for (Elt j = 0; j < reps.size(); ++j) table[i][j] = coset[G.mul(reps[i], reps[j])];
    // Well-definedness on all of A, not just representatives.
    for (Elt a = 0; a < G.order(); ++a)
      for (Elt b = 0; b < G.order(); ++b)
        if (coset[G.mul(a, b)] != table[coset[a]][coset[b]])
          throw InternalError("quotient multiplication ill-defined at simplex {" +
                              simplex_name(X.simplex(static_cast<int>(s))) + "}");
    groups[s].table = std::make_shared<const FiniteGroup>(FiniteGroup::from_table(std::move(table)));
    coset_of_[s] = std::move(coset);
    rep_of_[s] = std::move(reps);
  }

  std::map<std::pair<int, int>, std::vector<Elt>> alphas;
  for (const auto& [pair, a] : A->alphas()) {
    std::vector<Elt> induced(rep_of_[pair.first].size());
    for (Elt q = 0; q < induced.size(); ++q)
      induced[q] = coset_of_[pair.second][a[rep_of_[pair.first][q]]];
    // Independence of the representative choice.
    for (Elt x = 0; x < a.size(); ++x)
      if (coset_of_[pair.second][a[x]] != induced[coset_of_[pair.first][x]])
        throw InternalError("induced alpha ill-defined at " +
                            pair_name(X, pair.first, pair.second));
    alphas[pair] = std::move(induced);
  }
  system_ = std::make_shared<const CoefficientSystem>(A->complex(), std::move(groups),
                                                      std::move(alphas));
}

QuotientSystem quotient_system(const CoeffPtr& A, const NormalSubsystem& N) {
  return QuotientSystem(A, N);
}

}  // namespace amal
