// amal — classification of simplicial amalgams of finite groups
// SPDX-License-Identifier: Apache-2.0

#include "amal/classify.hpp"

#include <algorithm>
#include <deque>

namespace amal {

Cochain1 cocycle_of(const Amalgam& G, const Amalgam& G0, const CoefficientSystem& A0) {
  if (!same_type(G, G0)) throw ValidationError("cocycle_of: amalgam is not of the reference type");
  if (!is_normalized(G, G0)) throw ValidationError("cocycle_of: amalgam is not normalized");
  const SimplicialComplex& X = *G.complex();
  const std::vector<int>& edges = X.of_rank(1);

  Cochain1 z;
  z.values.resize(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const Simplex& s = X.simplex(edges[e]);
    const int vi = X.id_of({s[0]});
    const std::vector<Elt> back = G.cover(vi, edges[e]).partial_inverse();
    const GroupHom& psi = G0.cover(vi, edges[e]);
    Perm a(psi.map.size());
    for (Elt x = 0; x < a.size(); ++x) {
      const Elt v = back[psi.map[x]];
      if (v == static_cast<Elt>(-1))
        throw InternalError("cocycle_of: reference map leaves the image at edge {" +
                            simplex_name(s) + "}");
      a[x] = v;
    }
    auto idx = A0.at(edges[e]).auts->try_index_of(a);
    if (!idx)
      throw InternalError("cocycle_of: twist is not in the constrained automorphism group");
    z.values[e] = *idx;
  }
  if (!is_cocycle(A0, z)) throw InternalError("cocycle_of produced a non-cocycle");
  return z;
}

AmalgamPtr amalgam_of(const Cochain1& z, const Amalgam& G0, const CoefficientSystem& A0) {
  if (!is_cocycle(A0, z))
    throw ValidationError("amalgam_of: the given 1-cochain is not a cocycle");
  const SimplicialComplex& X = *G0.complex();
  const std::vector<int>& edges = X.of_rank(1);
  std::unordered_map<int, std::size_t> edge_pos;
  for (std::size_t e = 0; e < edges.size(); ++e) edge_pos[edges[e]] = e;

  std::map<std::pair<int, int>, GroupHom> covers;
  for (const auto& [sigma, tau] : X.cover_pairs()) {
    const int j = X.simplex(sigma).back();
    const int k = X.simplex(tau).back();
    if (j == k) {
      covers[{sigma, tau}] = G0.cover(sigma, tau);
      continue;
    }
    const int jk = X.id_of({j, k});
    const int vj = X.id_of({j});
    const Perm& a_inv =
        A0.at(jk).auts->aut(A0.at(jk).auts->inv(z.values[edge_pos.at(jk)]));
    const GroupHom into_jk = G0.connecting_map(jk, tau);     // psi^jk_tau
    const GroupHom jk_down = G0.connecting_map(vj, jk);      // psi^j_jk
    const std::vector<Elt> back = G0.connecting_map(vj, sigma).partial_inverse();
    GroupHom h;
    h.dom = G0.group(tau);
    h.cod = G0.group(sigma);
    h.map.resize(h.dom->order());
    for (Elt x = 0; x < h.map.size(); ++x) {
      const Elt v = back[jk_down.map[a_inv[into_jk.map[x]]]];
      if (v == static_cast<Elt>(-1))
        throw InternalError("amalgam_of: composite left the reference image at " +
                            simplex_name(X.simplex(sigma)));
      h.map[x] = v;
    }
    h.injective = true;
    covers[{sigma, tau}] = std::move(h);
  }

  AmalgamPtr out;
  try {
    out = build_amalgam(G0.complex(), G0.groups(), std::move(covers));
  } catch (const ValidationError& e) {
    throw InternalError(std::string("amalgam_of produced an incoherent amalgam: ") + e.what());
  }
  if (!same_type(*out, G0) || !is_normalized(*out, G0))
    throw InternalError("amalgam_of output is not a normalized amalgam of the reference type");
  return out;
}

AmalgamIso iso_from_coboundary(const Cochain0& f, const Cochain1& z1, const Cochain1& z2,
                               const Amalgam& G0, const CoefficientSystem& A0) {
  if (!(act(A0, z2, f) == z1))
    throw ValidationError("iso_from_coboundary: the action equation z1 = act(z2, f) fails");
  const SimplicialComplex& X = *G0.complex();

  AmalgamIso iso;
  iso.source = amalgam_of(z1, G0, A0);
  iso.target = amalgam_of(z2, G0, A0);
  iso.components.resize(X.size());
  for (std::size_t t = 0; t < X.size(); ++t) {
    const int top_vertex = X.simplex(static_cast<int>(t)).back();
    const int vid = X.id_of({top_vertex});
    const std::size_t vpos = static_cast<std::size_t>(
        std::lower_bound(X.of_rank(0).begin(), X.of_rank(0).end(), vid) - X.of_rank(0).begin());
    const std::vector<Elt> up = A0.alpha(vid, static_cast<int>(t));
    const Perm& p = A0.at(static_cast<int>(t)).auts->aut(up[f.values[vpos]]);
    GroupHom phi;
    phi.dom = G0.group(static_cast<int>(t));
    phi.cod = G0.group(static_cast<int>(t));
    phi.map.assign(p.begin(), p.end());
    phi.injective = true;
    iso.components[t] = std::move(phi);
  }
  IsoReport rep = check_iso(iso);
  if (!rep.ok)
    throw InternalError("iso_from_coboundary output failed verification: " + rep.violation);
  return iso;
}

Classification classify(const AmalgamPtr& G0, const Budgets& budgets) {
  Classification cls;
  cls.reference = G0;
  cls.system = coefficient_system_of(*G0, budgets);
  cls.cohomology = h1(cls.system, budgets);
  for (std::size_t c = 0; c < cls.cohomology.size(); ++c) {
    const CohomologyClass& record = cls.cohomology.classes[c];
    cls.representatives.push_back(amalgam_of(record.representative, *G0, *cls.system));
    if (record.base_point) {
      cls.base_class = c;
      // The identity cocycle must reproduce the reference amalgam on the nose.
      for (const auto& [pair, h] : cls.representatives.back()->covers())
        if (!homs_equal(h, G0->cover(pair.first, pair.second)))
          throw InternalError("base point does not reproduce the reference amalgam");
    }
  }
  return cls;
}

AmalgamIso Classification::witness(const Cochain1& z_a, const Cochain1& z_b) const {
  if (cohomology.class_of_cocycle(z_a) != cohomology.class_of_cocycle(z_b))
    throw ValidationError("witness requested for cocycles in different classes");
  const Cochain0 f_a = cohomology.witness_from_representative(z_a);
  const Cochain0 f_b = cohomology.witness_from_representative(z_b);
  // z_a = act(rep, f_a) and z_b = act(rep, f_b) give z_a = act(z_b, c) with
  // c_v = f_b_v^-1 . f_a_v (f_a applied first).
  const std::vector<int>& verts = system->complex()->of_rank(0);
  Cochain0 c;
  c.values.resize(verts.size());
  for (std::size_t v = 0; v < verts.size(); ++v) {
    const FiniteGroup& T = *system->table(verts[v]);
    c.values[v] = T.mul(f_a.values[v], T.inv(f_b.values[v]));
  }
  return iso_from_coboundary(c, z_a, z_b, *reference, *system);
}

GoldschmidtResult goldschmidt(const AmalgamPtr& G0, const Budgets& budgets) {
  const SimplicialComplex& X = *G0->complex();
  if (X.n_vertices() != 2 || X.size() != 3)
    throw ValidationError("goldschmidt requires the 1-simplex complex {1},{2},{1,2}");

  GoldschmidtResult res;
  res.system = coefficient_system_of(*G0, budgets);
  res.h1_classes = h1(res.system, budgets);

  const int edge = X.id_of({1, 2});
  const int v1 = X.id_of({1});
  const int v2 = X.id_of({2});
  const FiniteGroup& A12 = *res.system->table(edge);

  // Generators of the restricted images Abar_i = ad(psi^i)(A_i).
  std::vector<Elt> left_gens, right_gens;
  for (Elt g : res.system->table(v1)->generating_set())
    left_gens.push_back(res.system->alpha_cover(v1, edge)[g]);
  for (Elt g : res.system->table(v2)->generating_set())
    right_gens.push_back(res.system->alpha_cover(v2, edge)[g]);

  // Double-coset sweep: left-multiply by Abar_1, right-multiply by Abar_2.
  res.coset_of.assign(A12.order(), static_cast<Elt>(-1));
  std::uint64_t applied = 0;
  for (Elt start = 0; start < A12.order(); ++start) {
    if (res.coset_of[start] != static_cast<Elt>(-1)) continue;
    const Elt label = static_cast<Elt>(res.representatives.size());
    res.representatives.push_back(start);
    res.coset_of[start] = label;
    std::deque<Elt> queue{start};
    while (!queue.empty()) {
      const Elt at = queue.front();
      queue.pop_front();
      auto visit = [&](Elt next) {
        if (res.coset_of[next] == static_cast<Elt>(-1)) {
          res.coset_of[next] = label;
          queue.push_back(next);
        }
      };
      for (Elt g : left_gens) {
        if (++applied > budgets.orbit_moves) throw BudgetError("double coset sweep budget exceeded");
        visit(A12.mul(g, at));
      }
      for (Elt g : right_gens) {
        if (++applied > budgets.orbit_moves) throw BudgetError("double coset sweep budget exceeded");
        visit(A12.mul(at, g));
      }
    }
  }

  if (res.representatives.size() != res.h1_classes.size())
    throw InternalError("double coset count disagrees with |H^1| on the 1-simplex");

  // The orbit <-> coset bijection, via each class representative (which is a
  // single edge value).
  std::vector<char> hit(res.representatives.size(), 0);
  for (const CohomologyClass& c : res.h1_classes.classes) {
    const Elt coset = res.coset_of[c.representative.values[0]];
    if (hit[coset])
      throw InternalError("two H^1 classes landed in one double coset");
    hit[coset] = 1;
    res.class_to_coset.push_back(coset);
  }
  return res;
}

}  // namespace amal
