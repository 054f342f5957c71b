// amal — classification of simplicial amalgams of finite groups
// SPDX-License-Identifier: Apache-2.0

#include "amal/cohomology.hpp"

#include <algorithm>
#include <deque>

namespace amal {

namespace {

// Index structure shared by the cochain operations: vertex / edge / triangle
// positions plus the alpha maps between them.
struct Skeleton {
  std::vector<int> verts, edges, tris;  // simplex ids, ascending
  struct EdgeData {
    int id;
    std::size_t i_pos, j_pos;                  // endpoint vertex positions, i < j
    const std::vector<Elt>*alpha_i, *alpha_j;  // A_vertex -> A_edge
  };
  struct TriData {
    int id;
    std::size_t ij_pos, ik_pos, jk_pos;                   // edge positions
    const std::vector<Elt>*alpha_ij, *alpha_ik, *alpha_jk;  // A_edge -> A_tri
  };
  std::vector<EdgeData> edge_data;
  std::vector<TriData> tri_data;
  std::vector<std::vector<std::size_t>> tris_with_max_edge;  // by edge position
};

Skeleton skeleton_of(const CoefficientSystem& A) {
  const SimplicialComplex& X = *A.complex();
  Skeleton sk;
  sk.verts = X.of_rank(0);
  sk.edges = X.of_rank(1);
  sk.tris = X.of_rank(2);

  std::unordered_map<int, std::size_t> vert_pos, edge_pos;
  for (std::size_t p = 0; p < sk.verts.size(); ++p) vert_pos[sk.verts[p]] = p;
  for (std::size_t p = 0; p < sk.edges.size(); ++p) edge_pos[sk.edges[p]] = p;

  for (int e : sk.edges) {
    const Simplex& s = X.simplex(e);
    Skeleton::EdgeData d;
    d.id = e;
    d.i_pos = vert_pos.at(X.id_of({s[0]}));
    d.j_pos = vert_pos.at(X.id_of({s[1]}));
    d.alpha_i = &A.alpha_cover(X.id_of({s[0]}), e);
    d.alpha_j = &A.alpha_cover(X.id_of({s[1]}), e);
    sk.edge_data.push_back(d);
  }
  sk.tris_with_max_edge.resize(sk.edges.size());
  for (int t : sk.tris) {
    const Simplex& s = X.simplex(t);
    Skeleton::TriData d;
    d.id = t;
    d.ij_pos = edge_pos.at(X.id_of({s[0], s[1]}));
    d.ik_pos = edge_pos.at(X.id_of({s[0], s[2]}));
    d.jk_pos = edge_pos.at(X.id_of({s[1], s[2]}));
    d.alpha_ij = &A.alpha_cover(X.id_of({s[0], s[1]}), t);
    d.alpha_ik = &A.alpha_cover(X.id_of({s[0], s[2]}), t);
    d.alpha_jk = &A.alpha_cover(X.id_of({s[1], s[2]}), t);
    sk.tri_data.push_back(d);
    sk.tris_with_max_edge[d.jk_pos].push_back(sk.tri_data.size() - 1);
  }
  return sk;
}

}  // namespace

Cochain0 identity_cochain0(const CoefficientSystem& A) {
  return Cochain0{std::vector<Elt>(A.complex()->of_rank(0).size(), 0)};
}

Cochain1 identity_cochain1(const CoefficientSystem& A) {
  return Cochain1{std::vector<Elt>(A.complex()->of_rank(1).size(), 0)};
}

bool is_identity(const Cochain1& b) {
  return std::all_of(b.values.begin(), b.values.end(), [](Elt v) { return v == 0; });
}
bool is_identity(const Cochain2& b) {
  return std::all_of(b.values.begin(), b.values.end(), [](Elt v) { return v == 0; });
}

Cochain1 d0(const CoefficientSystem& A, const Cochain0& a) {
  const Skeleton sk = skeleton_of(A);
  Cochain1 b;
  b.values.resize(sk.edges.size());
  for (std::size_t e = 0; e < sk.edges.size(); ++e) {
    const auto& d = sk.edge_data[e];
    const FiniteGroup& T = *A.table(d.id);
    const FiniteGroup& Tj = *A.table(sk.verts[d.j_pos]);
    // alpha^j(a_j^-1) . alpha^i(a_i): the i-part is applied first.
    b.values[e] = T.mul((*d.alpha_i)[a.values[d.i_pos]], (*d.alpha_j)[Tj.inv(a.values[d.j_pos])]);
  }
  return b;
}

Cochain2 d1(const CoefficientSystem& A, const Cochain1& b) {
  const Skeleton sk = skeleton_of(A);
  Cochain2 c;
  c.values.resize(sk.tris.size());
  for (std::size_t t = 0; t < sk.tris.size(); ++t) {
    const auto& d = sk.tri_data[t];
    const FiniteGroup& T = *A.table(d.id);
    const FiniteGroup& Tij = *A.table(sk.edges[d.ij_pos]);
    const FiniteGroup& Tjk = *A.table(sk.edges[d.jk_pos]);
    // alpha^jk(b_jk^-1) . alpha^ik(b_ik) . alpha^ij(b_ij^-1), rightmost first.
    Elt acc = (*d.alpha_jk)[Tjk.inv(b.values[d.jk_pos])];
    acc = T.mul((*d.alpha_ik)[b.values[d.ik_pos]], acc);
    acc = T.mul((*d.alpha_ij)[Tij.inv(b.values[d.ij_pos])], acc);
    c.values[t] = acc;
  }
  return c;
}

Cochain1 act(const CoefficientSystem& A, const Cochain1& b, const Cochain0& a) {
  const Skeleton sk = skeleton_of(A);
  Cochain1 r;
  r.values.resize(sk.edges.size());
  for (std::size_t e = 0; e < sk.edges.size(); ++e) {
    const auto& d = sk.edge_data[e];
    const FiniteGroup& T = *A.table(d.id);
    const FiniteGroup& Tj = *A.table(sk.verts[d.j_pos]);
    // alpha^j(a_j^-1) . b . alpha^i(a_i), rightmost first.
    Elt acc = T.mul(b.values[e], (*d.alpha_j)[Tj.inv(a.values[d.j_pos])]);
    acc = T.mul((*d.alpha_i)[a.values[d.i_pos]], acc);
    r.values[e] = acc;
  }
  return r;
}

Cochain0 action_product(const CoefficientSystem& A, const Cochain0& a, const Cochain0& b) {
  const std::vector<int>& verts = A.complex()->of_rank(0);
  Cochain0 c;
  c.values.resize(verts.size());
  // act(act(z, a), b) = act(z, c) with c_v = a_v . b_v in composition order,
  // i.e. b_v applied first.
  for (std::size_t v = 0; v < verts.size(); ++v)
    c.values[v] = A.table(verts[v])->mul(b.values[v], a.values[v]);
  return c;
}

bool is_cocycle(const CoefficientSystem& A, const Cochain1& b) { return is_identity(d1(A, b)); }

std::vector<Cochain1> cocycles_z1(const CoefficientSystem& A, const Budgets& budgets) {
  const Skeleton sk = skeleton_of(A);

  // Fibers of alpha^jk_t for every triangle, used to solve for the last edge.
  std::vector<std::vector<std::vector<Elt>>> fibers(sk.tri_data.size());
  for (std::size_t t = 0; t < sk.tri_data.size(); ++t) {
    const auto& d = sk.tri_data[t];
    fibers[t].resize(A.table(d.id)->order());
    for (Elt x = 0; x < d.alpha_jk->size(); ++x) fibers[t][(*d.alpha_jk)[x]].push_back(x);
  }

  std::vector<Cochain1> out;
  std::vector<Elt> values(sk.edges.size(), 0);

  auto rec = [&](auto&& self, std::size_t e) -> void {
    if (e == sk.edges.size()) {
      if (out.size() >= budgets.cocycles) throw BudgetError("cocycle enumeration budget exceeded");
      out.push_back(Cochain1{values});
      return;
    }
    const auto& constraints = sk.tris_with_max_edge[e];
    if (constraints.empty()) {
      for (Elt v = 0; v < A.table(sk.edge_data[e].id)->order(); ++v) {
        values[e] = v;
        self(self, e + 1);
      }
      values[e] = 0;
      return;
    }
    // Required image of b_jk under alpha^jk per constraining triangle:
    // alpha^jk(b_jk) = alpha^ik(b_ik) . alpha^ij(b_ij^-1).
    std::vector<Elt> required(constraints.size());
    for (std::size_t c = 0; c < constraints.size(); ++c) {
      const auto& d = sk.tri_data[constraints[c]];
      const FiniteGroup& T = *A.table(d.id);
      const FiniteGroup& Tij = *A.table(sk.edges[d.ij_pos]);
      required[c] =
          T.mul((*d.alpha_ij)[Tij.inv(values[d.ij_pos])], (*d.alpha_ik)[values[d.ik_pos]]);
    }
    for (Elt v : fibers[constraints[0]][required[0]]) {
      bool ok = true;
      for (std::size_t c = 1; c < constraints.size() && ok; ++c)
        ok = (*sk.tri_data[constraints[c]].alpha_jk)[v] == required[c];
      if (!ok) continue;
      values[e] = v;
      self(self, e + 1);
    }
    values[e] = 0;
  };
  rec(rec, 0);
  return out;
}

std::size_t H0Result::index_of(const Cochain0& a) const {
  auto it = index.find(a.values);
  if (it == index.end()) throw InternalError("tuple is not an element of H^0");
  return it->second;
}

H0Result h0(const CoefficientSystem& A, const Budgets& budgets) {
  const Skeleton sk = skeleton_of(A);

  // Constraints per vertex position: edges whose other endpoint was already
  // assigned, with the fiber of this vertex's alpha.
  struct Constraint {
    std::size_t other_pos;
    const std::vector<Elt>*alpha_other, *alpha_this;
    std::vector<std::vector<Elt>> fiber;  // by edge-group element
  };
  std::vector<std::vector<Constraint>> constraints(sk.verts.size());
  for (const auto& d : sk.edge_data) {
    const std::size_t lo = std::min(d.i_pos, d.j_pos), hi = std::max(d.i_pos, d.j_pos);
    Constraint c;
    c.other_pos = lo;
    c.alpha_other = lo == d.i_pos ? d.alpha_i : d.alpha_j;
    c.alpha_this = lo == d.i_pos ? d.alpha_j : d.alpha_i;
    c.fiber.resize(A.table(d.id)->order());
    for (Elt x = 0; x < c.alpha_this->size(); ++x) c.fiber[(*c.alpha_this)[x]].push_back(x);
    constraints[hi].push_back(std::move(c));
  }

  H0Result res;
  std::vector<Elt> values(sk.verts.size(), 0);
  std::uint64_t nodes = 0;
  auto rec = [&](auto&& self, std::size_t v) -> void {
    if (v == sk.verts.size()) {
      res.elements.push_back(Cochain0{values});
      return;
    }
    if (++nodes > budgets.orbit_moves) throw BudgetError("H^0 enumeration budget exceeded");
    const auto& cs = constraints[v];
    if (cs.empty()) {
      for (Elt x = 0; x < A.table(sk.verts[v])->order(); ++x) {
        values[v] = x;
        self(self, v + 1);
      }
      values[v] = 0;
      return;
    }
    const Elt target0 = (*cs[0].alpha_other)[values[cs[0].other_pos]];
    for (Elt x : cs[0].fiber[target0]) {
      bool ok = true;
      for (std::size_t c = 1; c < cs.size() && ok; ++c)
        ok = (*cs[c].alpha_this)[x] == (*cs[c].alpha_other)[values[cs[c].other_pos]];
      if (!ok) continue;
      values[v] = x;
      self(self, v + 1);
    }
    values[v] = 0;
  };
  rec(rec, 0);

  for (std::size_t i = 0; i < res.elements.size(); ++i) res.index[res.elements[i].values] = i;

  // Componentwise-product group structure; closure failure would falsify
  // the H^0-is-a-group corollary.
  constexpr std::size_t kH0GroupCap = 4096;
  if (res.elements.size() > kH0GroupCap)
    throw BudgetError("H^0 too large to materialize its group structure (" +
                      std::to_string(res.elements.size()) + " elements)");
  const std::size_t k = res.elements.size();
  std::vector<std::vector<Elt>> table(k, std::vector<Elt>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      std::vector<Elt> prod(sk.verts.size());
      for (std::size_t v = 0; v < sk.verts.size(); ++v)
        prod[v] = A.table(sk.verts[v])->mul(res.elements[i].values[v], res.elements[j].values[v]);
      auto it = res.index.find(prod);
      if (it == res.index.end()) throw InternalError("H^0 is not closed under products");
      table[i][j] = static_cast<Elt>(it->second);
    }
  res.group = std::make_shared<const FiniteGroup>(FiniteGroup::from_table(std::move(table)));
  return res;
}

std::size_t CohomologySet::class_of_cocycle(const Cochain1& z) const {
  auto it = cocycle_index.find(z.values);
  if (it == cocycle_index.end()) throw InternalError("not a 1-cocycle of this system");
  return class_of[it->second];
}

std::size_t CohomologySet::base_point_class() const {
  for (std::size_t c = 0; c < classes.size(); ++c)
    if (classes[c].base_point) return c;
  throw InternalError("no base point class");
}

Cochain0 CohomologySet::witness_from_representative(const Cochain1& z) const {
  auto it = cocycle_index.find(z.values);
  if (it == cocycle_index.end()) throw InternalError("not a 1-cocycle of this system");

  // Climb to the orbit root, then fold the moves forward:
  // f := id, then f_v <- g * f_v at each step.
  std::vector<std::pair<int, Elt>> path;  // (vertex_pos, gen), root-to-z order
  std::size_t at = it->second;
  while (preds[at].vertex_pos >= 0) {
    path.emplace_back(preds[at].vertex_pos, preds[at].gen);
    at = preds[at].from;
  }
  std::reverse(path.begin(), path.end());

  const std::vector<int>& verts = system->complex()->of_rank(0);
  Cochain0 f;
  f.values.assign(verts.size(), 0);
  for (const auto& [vp, g] : path)
    f.values[vp] = system->table(verts[vp])->mul(g, f.values[vp]);
  return f;
}

CohomologySet h1(const CoeffPtr& A, const Budgets& budgets) {
  const Skeleton sk = skeleton_of(*A);
  CohomologySet H;
  H.system = A;
  H.cocycles = cocycles_z1(*A, budgets);
  H.class_of.assign(H.cocycles.size(), static_cast<std::size_t>(-1));
  H.preds.assign(H.cocycles.size(), {});
  for (std::size_t i = 0; i < H.cocycles.size(); ++i) H.cocycle_index[H.cocycles[i].values] = i;

  // Generator moves: acting with a single vertex generator only touches the
  // incident edges.
  struct Touch {
    std::size_t edge_pos;
    bool at_min_side;
    Elt value;  // alpha^i(g) on the min side, (alpha^j(g))^-1 on the max side
  };
  struct Move {
    int vertex_pos;
    Elt gen;
    std::vector<Touch> touches;
  };
  std::vector<Move> moves;
  for (std::size_t vp = 0; vp < sk.verts.size(); ++vp) {
    for (Elt g : A->table(sk.verts[vp])->generating_set()) {
      Move mv;
      mv.vertex_pos = static_cast<int>(vp);
      mv.gen = g;
      for (std::size_t e = 0; e < sk.edge_data.size(); ++e) {
        const auto& d = sk.edge_data[e];
        if (d.i_pos == vp)
          mv.touches.push_back({e, true, (*d.alpha_i)[g]});
        if (d.j_pos == vp)
          mv.touches.push_back({e, false, A->table(d.id)->inv((*d.alpha_j)[g])});
      }
      moves.push_back(std::move(mv));
    }
  }

  std::uint64_t applied = 0;
  for (std::size_t start = 0; start < H.cocycles.size(); ++start) {
    if (H.class_of[start] != static_cast<std::size_t>(-1)) continue;
    const std::size_t cls = H.classes.size();
    CohomologyClass record;
    record.representative = H.cocycles[start];  // first unvisited = lex minimum of the orbit
    record.base_point = is_identity(H.cocycles[start]);
    H.classes.push_back(std::move(record));
    H.class_of[start] = cls;
    std::deque<std::size_t> queue{start};
    while (!queue.empty()) {
      const std::size_t at = queue.front();
      queue.pop_front();
      ++H.classes[cls].orbit_size;
      for (std::size_t m = 0; m < moves.size(); ++m) {
        if (++applied > budgets.orbit_moves)
          throw BudgetError("orbit sweep budget exceeded");
        std::vector<Elt> next = H.cocycles[at].values;
        for (const Touch& t : moves[m].touches) {
          const FiniteGroup& T = *A->table(sk.edge_data[t.edge_pos].id);
          next[t.edge_pos] =
              t.at_min_side ? T.mul(t.value, next[t.edge_pos]) : T.mul(next[t.edge_pos], t.value);
        }
        auto it = H.cocycle_index.find(next);
        if (it == H.cocycle_index.end())
          throw InternalError("coboundary action left Z^1");
        if (H.class_of[it->second] == static_cast<std::size_t>(-1)) {
          H.class_of[it->second] = cls;
          H.preds[it->second] = {at, moves[m].vertex_pos, moves[m].gen};
          queue.push_back(it->second);
        }
      }
    }
  }
  return H;
}

std::size_t h0_action(const CoeffPtr& A, const NormalSubsystem& N, const QuotientSystem& Q,
                      const Cochain0& a_bar, std::size_t h1N_class, const CohomologySet& h1N) {
  if (N.parent.get() != A.get() || Q.parent().get() != A.get())
    throw ValidationError("subsystem/quotient do not belong to the given system");
  if (!is_identity(d0(*Q.system(), a_bar)))
    throw ValidationError("the acting tuple is not in H^0 of the quotient");

  const std::vector<int>& verts = A->complex()->of_rank(0);
  const std::vector<int>& edges = A->complex()->of_rank(1);

  Cochain0 lift;
  lift.values.resize(verts.size());
  for (std::size_t v = 0; v < verts.size(); ++v)
    lift.values[v] = Q.rep_of(verts[v], a_bar.values[v]);

  const Cochain1& n_rep = h1N.classes.at(h1N_class).representative;
  Cochain1 n_in_A;
  n_in_A.values.resize(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e)
    n_in_A.values[e] = N.members[edges[e]][n_rep.values[e]];

  const Cochain1 moved = act(*A, n_in_A, lift);

  Cochain1 back;
  back.values.resize(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto& mem = N.members[edges[e]];
    auto it = std::lower_bound(mem.begin(), mem.end(), moved.values[e]);
    if (it == mem.end() || *it != moved.values[e])
      throw InternalError("H^0(A/N) action left the subsystem cochains");
    back.values[e] = static_cast<Elt>(it - mem.begin());
  }
  return h1N.class_of_cocycle(back);
}

ExactSequence exact_sequence(const CoeffPtr& A, const NormalSubsystem& N, const Budgets& budgets) {
  if (N.parent.get() != A.get())
    throw ValidationError("subsystem does not belong to the given system");
  const QuotientSystem Q(A, N);
  const CoeffPtr Nsys = N.as_system();
  const CoeffPtr Qsys = Q.system();
  const std::vector<int>& verts = A->complex()->of_rank(0);
  const std::vector<int>& edges = A->complex()->of_rank(1);

  ExactSequence seq{.h0N = h0(*Nsys, budgets),
                    .h0A = h0(*A, budgets),
                    .h0Q = h0(*Qsys, budgets),
                    .h1N = h1(Nsys, budgets),
                    .h1A = h1(A, budgets),
                    .h1Q = h1(Qsys, budgets),
                    .i0 = {},
                    .kappa0 = {},
                    .delta = {},
                    .i1 = {},
                    .kappa1 = {}};

  // i0: include N-tuples into A.
  for (const Cochain0& a : seq.h0N.elements) {
    Cochain0 up;
    up.values.resize(verts.size());
    for (std::size_t v = 0; v < verts.size(); ++v) up.values[v] = N.members[verts[v]][a.values[v]];
    seq.i0.push_back(seq.h0A.index_of(up));
  }
  // kappa0: project A-tuples to cosets.
  for (const Cochain0& a : seq.h0A.elements) {
    Cochain0 down;
    down.values.resize(verts.size());
    for (std::size_t v = 0; v < verts.size(); ++v)
      down.values[v] = Q.coset_of(verts[v], a.values[v]);
    seq.kappa0.push_back(seq.h0Q.index_of(down));
  }
  // delta: lift a quotient tuple and take the coboundary, landing in C^1(N).
  for (const Cochain0& q : seq.h0Q.elements) {
    Cochain0 lift;
    lift.values.resize(verts.size());
    for (std::size_t v = 0; v < verts.size(); ++v) lift.values[v] = Q.rep_of(verts[v], q.values[v]);
    const Cochain1 b = d0(*A, lift);
    Cochain1 in_N;
    in_N.values.resize(edges.size());
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const auto& mem = N.members[edges[e]];
      auto it = std::lower_bound(mem.begin(), mem.end(), b.values[e]);
      if (it == mem.end() || *it != b.values[e])
        throw InternalError("connecting map delta* left the subsystem");
      in_N.values[e] = static_cast<Elt>(it - mem.begin());
    }
    seq.delta.push_back(seq.h1N.class_of_cocycle(in_N));
  }
  // i1: push N-classes into A-classes.
  for (const CohomologyClass& c : seq.h1N.classes) {
    Cochain1 up;
    up.values.resize(edges.size());
    for (std::size_t e = 0; e < edges.size(); ++e)
      up.values[e] = N.members[edges[e]][c.representative.values[e]];
    seq.i1.push_back(seq.h1A.class_of_cocycle(up));
  }
  // kappa1: project A-classes to quotient classes.
  for (const CohomologyClass& c : seq.h1A.classes) {
    Cochain1 down;
    down.values.resize(edges.size());
    for (std::size_t e = 0; e < edges.size(); ++e)
      down.values[e] = Q.coset_of(edges[e], c.representative.values[e]);
    seq.kappa1.push_back(seq.h1Q.class_of_cocycle(down));
  }

  // Pointed-set exactness at the four interior nodes.
  auto check = [](const std::vector<std::size_t>& incoming, const std::vector<std::size_t>& outgoing,
                  std::size_t base, std::size_t node_size, const std::string& where) {
    std::vector<char> in_image(node_size, 0);
    for (std::size_t v : incoming) in_image[v] = 1;
    for (std::size_t x = 0; x < node_size; ++x) {
      const bool kernel = outgoing[x] == base;
      if (kernel != static_cast<bool>(in_image[x]))
        throw InternalError("exactness fails at " + where + ": element " + std::to_string(x) +
                            (kernel ? " is in the kernel but not the image"
                                    : " is in the image but not the kernel"));
    }
  };
  const std::size_t h0Q_base = seq.h0Q.index_of(identity_cochain0(*Qsys));
  check(seq.i0, seq.kappa0, h0Q_base, seq.h0A.elements.size(), "H^0(A)");
  check(seq.kappa0, seq.delta, seq.h1N.base_point_class(), seq.h0Q.elements.size(), "H^0(A/N)");
  {
    // delta's image sits inside H^1(N) classes; compare against ker i1.
    std::vector<std::size_t> delta_image = seq.delta;
    check(delta_image, seq.i1, seq.h1A.base_point_class(), seq.h1N.classes.size(), "H^1(N)");
  }
  check(seq.i1, seq.kappa1, seq.h1Q.base_point_class(), seq.h1A.classes.size(), "H^1(A)");
  return seq;
}

namespace {

void require_triangle(const SimplicialComplex& X, const std::string& who) {
  if (X.n_vertices() != 3 || X.size() != 7)
    throw ValidationError(who + " requires the full 2-simplex complex");
}

}  // namespace

QuotientH1 h1_via_quotient(const CoeffPtr& A, const NormalSubsystem& N, const Budgets& budgets) {
  require_triangle(*A->complex(), "h1_via_quotient");
  if (N.parent.get() != A.get())
    throw ValidationError("subsystem does not belong to the given system");
  for (const auto& [pair, a] : A->alphas()) {
    const auto& from = N.members[pair.first];
    const auto& to = N.members[pair.second];
    std::vector<char> hit(A->table(pair.second)->order(), 0);
    std::size_t distinct = 0;
    for (Elt m : from)
      if (!hit[a[m]]) {
        hit[a[m]] = 1;
        ++distinct;
      }
    if (distinct != from.size() || from.size() != to.size())
      throw ValidationError(
          "h1_via_quotient hypothesis violated: alpha restricted to N is not an isomorphism");
  }

  QuotientH1 res{.over_quotient = h1(QuotientSystem(A, N).system(), budgets),
                 .direct_count = std::nullopt};
  try {
    res.direct_count = h1(A, budgets).size();
  } catch (const BudgetError&) {
    // The quotient route exists precisely for systems too big to sweep
    // directly; a blown budget here is expected, not an error.
  }
  if (res.direct_count && *res.direct_count != res.over_quotient.size())
    throw InternalError("quotient lemma violated: |H^1(A)| = " +
                        std::to_string(*res.direct_count) + " but |H^1(A/N)| = " +
                        std::to_string(res.over_quotient.size()));
  return res;
}

CohomologySet triangular_reduced(const QuotientSystem& Q, const Budgets& budgets) {
  require_triangle(*Q.system()->complex(), "triangular_reduced");
  return h1(Q.system(), budgets);
}

}  // namespace amal
