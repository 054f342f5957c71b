// amal — classification of simplicial amalgams of finite groups
// SPDX-License-Identifier: Apache-2.0

#include "amal/presets.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <unordered_map>

namespace amal::presets {

namespace {

GroupPtr shared(FiniteGroup g) { return std::make_shared<const FiniteGroup>(std::move(g)); }

/// Amalgam on the 1-simplex with the same edge group embedded on both sides.
AmalgamPtr edge_amalgam(const GroupPtr& G1, const GroupPtr& G2, const GroupPtr& E,
                        const std::vector<Elt>& into1, const std::vector<Elt>& into2) {
  auto cx = std::make_shared<const SimplicialComplex>(SimplicialComplex::build(2, {{1, 2}}));
  GroupHom m1{E, G1, into1, true};
  GroupHom m2{E, G2, into2, true};
  std::map<std::pair<int, int>, GroupHom> covers;
  covers[{cx->id_of({1}), cx->id_of({1, 2})}] = std::move(m1);
  covers[{cx->id_of({2}), cx->id_of({1, 2})}] = std::move(m2);
  return build_amalgam(cx, {G1, G2, E}, std::move(covers));
}

/// Triangle amalgam from a nested chain T <= E <= V, all three maps given by
/// the same subgroup inclusions on every simplex of equal rank.
AmalgamPtr nested_triangle(const GroupPtr& V, const GroupPtr& E, const GroupPtr& T,
                           const std::vector<Elt>& e_in_v, const std::vector<Elt>& t_in_e) {
  auto cx = std::make_shared<const SimplicialComplex>(SimplicialComplex::build(3, {{1, 2, 3}}));
  std::vector<GroupPtr> groups(cx->size());
  for (std::size_t s = 0; s < cx->size(); ++s) {
    const int r = simplex_rank(cx->simplex(static_cast<int>(s)));
    groups[s] = r == 0 ? V : (r == 1 ? E : T);
  }
  std::map<std::pair<int, int>, GroupHom> covers;
  for (const auto& [sigma, tau] : cx->cover_pairs()) {
    const bool low = simplex_rank(cx->simplex(sigma)) == 0;
    GroupHom h{low ? E : T, low ? V : E, low ? e_in_v : t_in_e, true};
    covers[{sigma, tau}] = std::move(h);
  }
  return build_amalgam(cx, std::move(groups), std::move(covers));
}

/// The members of the subgroup generated by `seed`, as an embedding map for
/// the subgroup re-read as a group of its own.
std::pair<GroupPtr, std::vector<Elt>> subgroup_with_embedding(const GroupPtr& G,
                                                              const std::vector<Elt>& seed) {
  Subgroup S = subgroup_closure(G, seed);
  std::vector<Elt> embed(S.members.begin(), S.members.end());
  return {shared(S.as_group()), std::move(embed)};
}

// ---------------------------------------------------------------------------
// Projective geometry over F2: PG(d-1, 2) with the natural SL(d, 2) action
// on points / lines / (for d = 4) planes. Vectors are bitmasks 1..2^d-1.
// ---------------------------------------------------------------------------

struct LinearMap {
  std::array<std::uint32_t, 4> img;  // images of e_1..e_d as masks
  int d;
  std::uint32_t operator()(std::uint32_t v) const {
    std::uint32_t r = 0;
    for (int i = 0; i < d; ++i)
      if (v & (1u << i)) r ^= img[i];
    return r;
  }
};

struct Geometry {
  int d;
  std::vector<std::vector<std::uint32_t>> objects;  // each a sorted set of point masks
  std::unordered_map<std::string, std::size_t> object_index;
  std::vector<std::size_t> type_start;  // objects grouped: points, lines, [planes]

  static std::string key(const std::vector<std::uint32_t>& obj) {
    return std::string(reinterpret_cast<const char*>(obj.data()),
                       obj.size() * sizeof(std::uint32_t));
  }

  void add(std::vector<std::uint32_t> obj) {
    std::sort(obj.begin(), obj.end());
    if (object_index.emplace(key(obj), objects.size()).second) objects.push_back(std::move(obj));
  }

  Perm permutation_of(const LinearMap& m) const {
    Perm p(objects.size());
    for (std::size_t i = 0; i < objects.size(); ++i) {
      std::vector<std::uint32_t> moved;
      moved.reserve(objects[i].size());
      for (std::uint32_t v : objects[i]) moved.push_back(m(v));
      std::sort(moved.begin(), moved.end());
      p[i] = static_cast<std::uint32_t>(object_index.at(key(moved)));
    }
    return p;
  }
};

Geometry projective_geometry(int d) {
  Geometry geo;
  geo.d = d;
  const std::uint32_t n = (1u << d) - 1;
  geo.type_start.push_back(0);
  for (std::uint32_t v = 1; v <= n; ++v) geo.add({v});
  geo.type_start.push_back(geo.objects.size());
  for (std::uint32_t a = 1; a <= n; ++a)
    for (std::uint32_t b = a + 1; b <= n; ++b)
      if (b != a) geo.add({a, b, a ^ b});
  geo.type_start.push_back(geo.objects.size());
  if (d == 4) {
    // Planes are the kernels of the nonzero covectors.
    for (std::uint32_t c = 1; c <= n; ++c) {
      std::vector<std::uint32_t> plane;
      for (std::uint32_t v = 1; v <= n; ++v)
        if (__builtin_parity(v & c) == 0) plane.push_back(v);
      geo.add(std::move(plane));
    }
    geo.type_start.push_back(geo.objects.size());
  }
  return geo;
}

GroupPtr special_linear(const Geometry& geo, const Budgets& budgets) {
  const int d = geo.d;
  std::vector<LinearMap> gens;
  LinearMap cycle{};
  cycle.d = d;
  for (int i = 0; i < d; ++i) cycle.img[i] = 1u << ((i + 1) % d);
  LinearMap transvection{};
  transvection.d = d;
  for (int i = 0; i < d; ++i) transvection.img[i] = 1u << i;
  transvection.img[0] = (1u << 0) | (1u << 1);  // e1 -> e1 + e2
  LinearMap swap01{};
  swap01.d = d;
  for (int i = 0; i < d; ++i) swap01.img[i] = 1u << i;
  swap01.img[0] = 1u << 1;
  swap01.img[1] = 1u << 0;
  gens = {cycle, transvection, swap01};

  std::vector<Perm> perm_gens;
  for (const LinearMap& m : gens) perm_gens.push_back(geo.permutation_of(m));
  return shared(FiniteGroup::from_generators(geo.objects.size(), perm_gens, budgets));
}

Subgroup object_stabilizer(const GroupPtr& G, std::size_t object) {
  std::vector<Elt> members;
  std::vector<std::uint8_t> mask(G->order(), 0);
  for (Elt g = 0; g < G->order(); ++g)
    if (G->perm_of(g)[object] == object) {
      members.push_back(g);
      mask[g] = 1;
    }
  return Subgroup{G, std::move(members), std::move(mask)};
}

AmalgamPtr projective_parabolic(int d, const Budgets& budgets) {
  Geometry geo = projective_geometry(d);
  GroupPtr G = special_linear(geo, budgets);
  const std::size_t expected = d == 3 ? 168 : 20160;
  if (G->order() != expected)
    throw InternalError("projective linear group closure has wrong order");

  // The standard flag: point <e1>, line <e1,e2>, (d = 4) plane <e1,e2,e3>.
  const std::size_t point = geo.object_index.at(Geometry::key({1u}));
  const std::size_t line = geo.object_index.at(Geometry::key({1u, 2u, 3u}));
  std::map<int, Subgroup> stabs;
  stabs.emplace(1, object_stabilizer(G, point));
  stabs.emplace(2, object_stabilizer(G, line));
  if (d == 4) {
    std::vector<std::uint32_t> plane{1, 2, 3, 4, 5, 6, 7};
    stabs.emplace(3, object_stabilizer(G, geo.object_index.at(Geometry::key(plane))));
  }
  return parabolic_amalgam(G, stabs);
}

}  // namespace

GroupPtr trivial() { return shared(FiniteGroup::from_table({{0}})); }

GroupPtr cyclic(int n) {
  Perm gen(n);
  for (int i = 0; i < n; ++i) gen[i] = static_cast<std::uint32_t>((i + 1) % n);
  return shared(FiniteGroup::from_generators(n, {gen}));
}

GroupPtr dihedral8() {
  return shared(FiniteGroup::from_generators(4, {{1, 2, 3, 0}, {3, 2, 1, 0}}));
}

GroupPtr klein_four() {
  return shared(FiniteGroup::from_generators(4, {{1, 0, 3, 2}, {2, 3, 0, 1}}));
}

GroupPtr symmetric(int n) {
  Perm swap01 = identity_perm(n);
  std::swap(swap01[0], swap01[1]);
  Perm cycle(n);
  for (int i = 0; i < n; ++i) cycle[i] = static_cast<std::uint32_t>((i + 1) % n);
  return shared(FiniteGroup::from_generators(n, {swap01, cycle}));
}

GroupPtr quaternion8() {
  // Elements 1, -1, i, -i, j, -j, k, -k.
  const int I = 2, J = 4, K = 6;
  auto neg = [](int x) { return x == 0 ? 1 : (x == 1 ? 0 : (x % 2 ? x - 1 : x + 1)); };
  std::vector<std::vector<Elt>> t(8, std::vector<Elt>(8));
  auto base_mul = [&](int a, int b) -> int {  // on {1, i, j, k} with signs folded in
    if (a == 0) return b;
    if (b == 0) return a;
    if (a == b) return 1;                         // i*i = -1
    if (a == I) return b == J ? K : neg(J);       // i*j = k, i*k = -j
    if (a == J) return b == K ? I : neg(K);       // j*k = i, j*i = -k
    return b == I ? J : neg(I);                   // k*i = j, k*j = -i
  };
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      int r = base_mul(a & ~1, b & ~1);
      if (a & 1) r = neg(r);
      if (b & 1) r = neg(r);
      t[a][b] = static_cast<Elt>(r);
    }
  auto G = shared(FiniteGroup::from_table(std::move(t)));
  return G;
}

std::vector<std::string> names() {
  return {"trivial-edge",     "trivial-triangle", "chain-z8-z4",      "edge-z4-v4",
          "goldschmidt-d8-v4", "goldschmidt-s4-d8", "edge-q8-z4",       "triangle-s3",
          "triangle-d8",      "triangle-d12-s3",  "triangle-s4-d8-v4", "tetra-z3",
          "sl3-fano",         "sl4-pg32"};
}

AmalgamPtr amalgam(const std::string& name, const Budgets& budgets) {
  if (name == "trivial-edge") {
    auto T = trivial();
    return edge_amalgam(T, T, T, {0}, {0});
  }
  if (name == "trivial-triangle") {
    auto T = trivial();
    return nested_triangle(T, T, T, {0}, {0});
  }
  if (name == "chain-z8-z4") {
    // Path 1 - 2 - 3 with Z8 vertex groups over Z4 edge groups.
    auto cx = std::make_shared<const SimplicialComplex>(
        SimplicialComplex::build(3, {{1, 2}, {2, 3}}));
    auto Z8 = cyclic(8);
    auto [Z4, embed] = subgroup_with_embedding(Z8, {Z8->mul(1, 1)});  // <g^2>
    std::vector<GroupPtr> groups(cx->size());
    for (std::size_t s = 0; s < cx->size(); ++s)
      groups[s] = simplex_rank(cx->simplex(static_cast<int>(s))) == 0 ? Z8 : Z4;
    std::map<std::pair<int, int>, GroupHom> covers;
    for (const auto& [sigma, tau] : cx->cover_pairs())
      covers[{sigma, tau}] = GroupHom{Z4, Z8, embed, true};
    return build_amalgam(cx, std::move(groups), std::move(covers));
  }
  if (name == "edge-z4-v4") {
    auto Z4 = cyclic(4);
    auto V4 = klein_four();
    // The order-2 subgroup on each side.
    auto [E, e4] = subgroup_with_embedding(Z4, {Z4->mul(1, 1)});
    Elt inv2 = 0;
    for (Elt x = 1; x < 4; ++x)
      if (V4->element_order(x) == 2) {
        inv2 = x;
        break;
      }
    auto [E2, ev] = subgroup_with_embedding(V4, {inv2});
    (void)E2;
    return edge_amalgam(Z4, V4, E, e4, ev);
  }
  if (name == "goldschmidt-d8-v4") {
    auto D8 = dihedral8();
    Elt r1 = 0, r2 = 0;
    bool found = false;
    for (Elt a = 1; a < 8 && !found; ++a)
      for (Elt b = a + 1; b < 8 && !found; ++b)
        if (D8->element_order(a) == 2 && D8->element_order(b) == 2) {
          const Elt p = D8->mul(a, b);
          if (p != 0 && p != a && p != b && D8->element_order(p) == 2) {
            r1 = a;
            r2 = b;
            found = true;
          }
        }
    auto [V4, embed] = subgroup_with_embedding(D8, {r1, r2});
    return edge_amalgam(D8, D8, V4, embed, embed);
  }
  if (name == "goldschmidt-s4-d8") {
    auto S4 = symmetric(4);
    // A Sylow 2-subgroup: generated by a 4-cycle and a transposition in it.
    Elt four = 0, swap = 0;
    for (Elt x = 1; x < 24; ++x)
      if (S4->element_order(x) == 4) {
        four = x;
        break;
      }
    const Elt square = S4->mul(four, four);
    for (Elt x = 1; x < 24; ++x)
      if (S4->element_order(x) == 2 && x != square &&
          S4->mul(x, square) == S4->mul(square, x)) {
        swap = x;
        break;
      }
    auto [D8, embed] = subgroup_with_embedding(S4, {four, swap});
    if (D8->order() != 8) throw InternalError("Sylow subgroup construction broke");
    return edge_amalgam(S4, S4, D8, embed, embed);
  }
  if (name == "edge-q8-z4") {
    auto Q8 = quaternion8();
    auto [Z4, embed] = subgroup_with_embedding(Q8, {2});  // <i>
    return edge_amalgam(Q8, Q8, Z4, embed, embed);
  }
  if (name == "triangle-s3") {
    auto S3 = symmetric(3);
    std::vector<Elt> id(6);
    for (Elt x = 0; x < 6; ++x) id[x] = x;
    return nested_triangle(S3, S3, S3, id, id);
  }
  if (name == "triangle-d8") {
    auto D8 = dihedral8();
    std::vector<Elt> id(8);
    for (Elt x = 0; x < 8; ++x) id[x] = x;
    return nested_triangle(D8, D8, D8, id, id);
  }
  if (name == "triangle-d12-s3") {
    // D12 = S3 x C2 vertex groups over the S3 of rotations-and-flips that
    // avoids the central flip.
    auto D12 = shared(FiniteGroup::from_generators(6, {{1, 2, 3, 4, 5, 0}, {5, 4, 3, 2, 1, 0}}));
    // S3 inside D12: generated by the rotation^2 and a reflection.
    Elt rot2 = 0, refl = 0;
    for (Elt x = 1; x < 12; ++x)
      if (D12->element_order(x) == 3) {
        rot2 = x;
        break;
      }
    for (Elt x = 1; x < 12; ++x)
      if (D12->element_order(x) == 2 && D12->mul(x, rot2) != D12->mul(rot2, x)) {
        refl = x;
        break;
      }
    auto [S3sub, embed] = subgroup_with_embedding(D12, {rot2, refl});
    if (S3sub->order() != 6) throw InternalError("S3-in-D12 construction broke");
    std::vector<Elt> id(6);
    for (Elt x = 0; x < 6; ++x) id[x] = x;
    return nested_triangle(D12, S3sub, S3sub, embed, id);
  }
  if (name == "triangle-s4-d8-v4") {
    auto S4 = symmetric(4);
    Elt four = 0;
    for (Elt x = 1; x < 24; ++x)
      if (S4->element_order(x) == 4) {
        four = x;
        break;
      }
    const Elt square = S4->mul(four, four);
    Elt swap = 0;
    for (Elt x = 1; x < 24; ++x)
      if (S4->element_order(x) == 2 && x != square &&
          S4->mul(x, square) == S4->mul(square, x)) {
        swap = x;
        break;
      }
    Subgroup D8sub = subgroup_closure(S4, {four, swap});
    auto D8 = shared(D8sub.as_group());
    std::vector<Elt> d8_in_s4(D8sub.members.begin(), D8sub.members.end());
    // Klein four inside that D8: the square of the 4-cycle and the swap.
    Subgroup V4sub = subgroup_closure(S4, {square, swap});
    if (V4sub.size() != 4) throw InternalError("V4-in-D8 construction broke");
    std::vector<Elt> v4_in_d8;
    for (Elt m : V4sub.members) v4_in_d8.push_back(D8sub.position_of(m));
    auto V4 = shared(V4sub.as_group());
    return nested_triangle(S4, D8, V4, d8_in_s4, v4_in_d8);
  }
  if (name == "tetra-z3") {
    // Constant Z3 on the full 3-simplex: the lone rank-3 fixture.
    auto Z3 = cyclic(3);
    auto cx = std::make_shared<const SimplicialComplex>(SimplicialComplex::build(4, {{1, 2, 3, 4}}));
    std::vector<GroupPtr> groups(cx->size(), Z3);
    std::map<std::pair<int, int>, GroupHom> covers;
    for (const auto& [sigma, tau] : cx->cover_pairs())
      covers[{sigma, tau}] = GroupHom::identity_on(Z3);
    return build_amalgam(cx, std::move(groups), std::move(covers));
  }
  if (name == "sl3-fano") return sl3_fano(budgets);
  if (name == "sl4-pg32") return sl4_pg32(budgets);
  throw ValidationError("unknown preset amalgam: " + name);
}

AmalgamPtr sl3_fano(const Budgets& budgets) { return projective_parabolic(3, budgets); }

AmalgamPtr sl4_pg32(const Budgets& budgets) { return projective_parabolic(4, budgets); }

}  // namespace amal::presets
