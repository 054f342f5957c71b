// amal — classification of simplicial amalgams of finite groups
// SPDX-License-Identifier: Apache-2.0

#include "amal/aut.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <deque>
#include <map>
#include <thread>
#include <unordered_set>

namespace amal {

AutGroup::AutGroup(GroupPtr base, std::vector<Perm> elements) : base_(std::move(base)) {
  if (elements.empty()) throw InternalError("automorphism set is empty");
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  // The identity fixes every index and is therefore the lexicographic
  // minimum among automorphism permutations; sorting puts it at 0.
  structure_ = std::make_shared<const FiniteGroup>(FiniteGroup::from_closed_perms(std::move(elements)));
  generators_ = structure_->generating_set();
}

Elt AutGroup::index_of(const Perm& p) const {
  auto idx = structure_->index_of_perm(p);
  if (!idx) throw InternalError("permutation is not a member of this automorphism group");
  return *idx;
}

GroupHom AutGroup::as_hom(Elt i) const {
  GroupHom h;
  h.dom = base_;
  h.cod = base_;
  const Perm& p = aut(i);
  h.map.assign(p.begin(), p.end());
  h.injective = true;
  return h;
}

namespace {

// ---------------------------------------------------------------------------
// Generator-image backtracking.
//
// Elements of the domain are enumerated in the discovery order of the
// subgroup chain <g_1> < <g_1,g_2> < ... = G ("locals"). For each depth the
// schedule lists products (local, generator) -> local; running the schedule
// against candidate generator images simultaneously extends the partial map
// and verifies multiplicativity, so a contradiction aborts a branch at the
// first failing product.
// ---------------------------------------------------------------------------

constexpr Elt kUnset = static_cast<Elt>(-1);

struct Invariants {
  std::vector<std::uint32_t> fp;  // fingerprint id per element (shared id space)
};

using FpKey = std::array<std::uint32_t, 4>;  // order, centralizer, class size, pattern

std::vector<FpKey> fingerprint_keys(const FiniteGroup& G,
                                    const std::vector<const Subgroup*>& constraints) {
  const std::size_t n = G.order();
  std::vector<FpKey> keys(n);

  std::vector<std::uint32_t> pattern(n, 0);
  for (std::size_t c = 0; c < constraints.size(); ++c)
    for (Elt x = 0; x < n; ++x)
      if (constraints[c]->contains(x)) pattern[x] |= (1u << c);

  // Conjugacy classes as orbits of conjugation by a generating set.
  std::vector<std::uint32_t> class_id(n, static_cast<std::uint32_t>(-1));
  std::vector<std::uint32_t> class_size;
  const std::vector<Elt> gens = G.generating_set();
  for (Elt x = 0; x < n; ++x) {
    if (class_id[x] != static_cast<std::uint32_t>(-1)) continue;
    const auto id = static_cast<std::uint32_t>(class_size.size());
    std::deque<Elt> queue{x};
    class_id[x] = id;
    std::uint32_t size = 0;
    while (!queue.empty()) {
      Elt y = queue.front();
      queue.pop_front();
      ++size;
      for (Elt g : gens) {
        Elt z = G.conj(y, g);
        if (class_id[z] == static_cast<std::uint32_t>(-1)) {
          class_id[z] = id;
          queue.push_back(z);
        }
      }
    }
    class_size.push_back(size);
  }

  for (Elt x = 0; x < n; ++x)
    keys[x] = {G.element_order(x), static_cast<std::uint32_t>(G.centralizer_size(x)),
               class_size[class_id[x]], pattern[x]};
  return keys;
}

std::vector<char> closure_mask(const FiniteGroup& G, const std::vector<Elt>& gens) {
  std::vector<char> in(G.order(), 0);
  in[FiniteGroup::identity] = 1;
  std::deque<Elt> queue{FiniteGroup::identity};
  while (!queue.empty()) {
    Elt x = queue.front();
    queue.pop_front();
    for (Elt g : gens) {
      Elt z = G.mul(x, g);
      if (!in[z]) {
        in[z] = 1;
        queue.push_back(z);
      }
    }
  }
  return in;
}

struct Step {
  Elt l;  // local index of the left factor
  Elt j;  // generator index
  Elt t;  // local index of the product
};

struct DepthPlan {
  Elt gen_elt = 0;           // the domain generator assigned at this depth
  std::vector<Step> steps;   // runs in order; definedness is checked at runtime
  std::vector<Elt> candidates;  // codomain elements, ascending
};

struct SearchPlan {
  std::vector<Elt> local_elt;  // local -> domain element
  std::vector<Elt> elt_local;  // domain element -> local
  std::vector<DepthPlan> depths;
  bool feasible = true;  // false when some fingerprint has no candidates
};

SearchPlan build_plan(const FiniteGroup& dom, const FiniteGroup& cod,
                      const std::vector<std::uint32_t>& dom_fp,
                      const std::vector<std::uint32_t>& cod_fp) {
  SearchPlan plan;
  const std::size_t n = dom.order();

  std::map<std::uint32_t, std::vector<Elt>> buckets;
  for (Elt y = 0; y < cod.order(); ++y) buckets[cod_fp[y]].push_back(y);
  auto bucket_of = [&](Elt x) -> const std::vector<Elt>* {
    auto it = buckets.find(dom_fp[x]);
    return it == buckets.end() ? nullptr : &it->second;
  };

  // Generating sequence, greedily minimizing the candidate bucket.
  std::vector<Elt> gens;
  std::vector<char> in = closure_mask(dom, gens);
  while (std::count(in.begin(), in.end(), 1) < static_cast<long>(n)) {
    Elt best = kUnset;
    std::size_t best_size = static_cast<std::size_t>(-1);
    for (Elt x = 0; x < n; ++x) {
      if (in[x]) continue;
      const auto* b = bucket_of(x);
      const std::size_t size = b ? b->size() : 0;
      if (size < best_size) {
        best_size = size;
        best = x;
      }
    }
    gens.push_back(best);
    in = closure_mask(dom, gens);
  }

  plan.local_elt = {FiniteGroup::identity};
  plan.elt_local.assign(n, kUnset);
  plan.elt_local[FiniteGroup::identity] = 0;

  for (std::size_t d = 0; d < gens.size(); ++d) {
    DepthPlan dp;
    dp.gen_elt = gens[d];
    const auto* b = bucket_of(gens[d]);
    if (!b) plan.feasible = false;
    if (b) dp.candidates = *b;

    const std::size_t size_before = plan.local_elt.size();
    for (std::size_t l = 0; l < plan.local_elt.size(); ++l) {
      const std::size_t j_lo = (l < size_before) ? d : 0;
      for (std::size_t j = j_lo; j <= d; ++j) {
        Elt t_elt = dom.mul(plan.local_elt[l], gens[j]);
        if (plan.elt_local[t_elt] == kUnset) {
          plan.elt_local[t_elt] = static_cast<Elt>(plan.local_elt.size());
          plan.local_elt.push_back(t_elt);
        }
        dp.steps.push_back({static_cast<Elt>(l), static_cast<Elt>(j), plan.elt_local[t_elt]});
      }
    }
    plan.depths.push_back(std::move(dp));
  }

  if (plan.local_elt.size() != n) throw InternalError("generating sequence does not close");
  return plan;
}

struct SearchState {
  std::vector<Elt> img;       // per local, kUnset when not yet assigned
  std::vector<char> seen;     // per codomain element
  std::vector<Elt> gen_img;   // image of generator at each depth
  std::vector<std::vector<Elt>> trail;  // locals assigned per depth, for rollback
};

class IsoSearch {
 public:
  IsoSearch(const FiniteGroup& dom, const FiniteGroup& cod, const SearchPlan& plan,
            const std::vector<std::uint32_t>& dom_fp, const std::vector<std::uint32_t>& cod_fp,
            std::uint64_t node_budget, std::size_t limit)
      : dom_(dom),
        cod_(cod),
        plan_(plan),
        dom_fp_(dom_fp),
        cod_fp_(cod_fp),
        node_budget_(node_budget),
        limit_(limit) {}

  // Runs the subtree under a fixed depth-0 candidate subrange (for the
  // parallel split) or the full search when `first`/`last` cover everything.
  std::vector<Perm> run(std::size_t cand_first, std::size_t cand_last,
                        std::atomic<std::uint64_t>& nodes) {
    results_.clear();
    if (!plan_.feasible) return {};
    state_.img.assign(plan_.local_elt.size(), kUnset);
    state_.seen.assign(cod_.order(), 0);
    state_.gen_img.assign(plan_.depths.size(), kUnset);
    state_.trail.assign(plan_.depths.size(), {});
    state_.img[0] = FiniteGroup::identity;
    state_.seen[FiniteGroup::identity] = 1;
    nodes_ = &nodes;
    if (plan_.depths.empty()) {
      emit();
      return std::move(results_);
    }
    descend(0, cand_first, cand_last);
    return std::move(results_);
  }

 private:
  void emit() {
    Perm p(dom_.order());
    for (std::size_t l = 0; l < plan_.local_elt.size(); ++l)
      p[plan_.local_elt[l]] = state_.img[l];
    results_.push_back(std::move(p));
  }

  bool done() const { return results_.size() >= limit_; }

  void descend(std::size_t d, std::size_t cand_first, std::size_t cand_last) {
    const DepthPlan& dp = plan_.depths[d];
    for (std::size_t c = cand_first; c < cand_last && !done(); ++c) {
      const Elt cand = dp.candidates[c];
      if (state_.seen[cand]) continue;
      if (nodes_->fetch_add(1, std::memory_order_relaxed) >= node_budget_)
        throw BudgetError("automorphism search budget exceeded");
      if (try_depth(d, cand)) {
        if (d + 1 == plan_.depths.size())
          emit();
        else
          descend(d + 1, 0, plan_.depths[d + 1].candidates.size());
      }
      rollback(d);
    }
  }

  // Applies the schedule of depth d with `cand` as the generator image.
  // Returns false (leaving a partial trail for rollback) on contradiction.
  bool try_depth(std::size_t d, Elt cand) {
    const DepthPlan& dp = plan_.depths[d];
    state_.gen_img[d] = cand;
    auto& trail = state_.trail[d];
    for (const Step& s : dp.steps) {
      // img[s.l] is always assigned before this step runs: the schedule
      // discovers products left factor first, and the very first step of a
      // depth is (identity, new generator).
      const Elt v = cod_.mul(state_.img[s.l], state_.gen_img[s.j]);
      if (state_.img[s.t] == kUnset) {
        if (state_.seen[v]) return false;
        if (dom_fp_[plan_.local_elt[s.t]] != cod_fp_[v]) return false;
        state_.img[s.t] = v;
        state_.seen[v] = 1;
        trail.push_back(s.t);
      } else if (state_.img[s.t] != v) {
        return false;
      }
    }
    return true;
  }

  void rollback(std::size_t d) {
    for (Elt t : state_.trail[d]) {
      state_.seen[state_.img[t]] = 0;
      state_.img[t] = kUnset;
    }
    state_.trail[d].clear();
  }

  const FiniteGroup& dom_;
  const FiniteGroup& cod_;
  const SearchPlan& plan_;
  const std::vector<std::uint32_t>& dom_fp_;
  const std::vector<std::uint32_t>& cod_fp_;
  std::uint64_t node_budget_;
  std::size_t limit_;
  SearchState state_;
  std::vector<Perm> results_;
  std::atomic<std::uint64_t>* nodes_ = nullptr;
};

Invariants shared_fingerprints(const std::vector<FpKey>& dom_keys,
                               const std::vector<FpKey>& cod_keys, Invariants& cod_out) {
  std::map<FpKey, std::uint32_t> ids;
  auto intern = [&](const FpKey& k) {
    auto [it, fresh] = ids.emplace(k, static_cast<std::uint32_t>(ids.size()));
    (void)fresh;
    return it->second;
  };
  Invariants dom_inv;
  dom_inv.fp.reserve(dom_keys.size());
  for (const auto& k : dom_keys) dom_inv.fp.push_back(intern(k));
  cod_out.fp.clear();
  cod_out.fp.reserve(cod_keys.size());
  for (const auto& k : cod_keys) cod_out.fp.push_back(intern(k));
  return dom_inv;
}

std::vector<Perm> search_isomorphisms(const FiniteGroup& dom, const FiniteGroup& cod,
                                      const std::vector<const Subgroup*>& dom_constraints,
                                      const std::vector<const Subgroup*>& cod_constraints,
                                      std::size_t limit, const Budgets& budgets) {
  if (dom.order() != cod.order()) return {};

  Invariants cod_inv;
  Invariants dom_inv = shared_fingerprints(fingerprint_keys(dom, dom_constraints),
                                           fingerprint_keys(cod, cod_constraints), cod_inv);
  SearchPlan plan = build_plan(dom, cod, dom_inv.fp, cod_inv.fp);

  std::atomic<std::uint64_t> nodes{0};
  const std::size_t top = plan.depths.empty() ? 0 : plan.depths[0].candidates.size();
  const unsigned workers =
      (limit == 1 || top < 2) ? 1 : std::max(1u, std::min(budgets.workers, unsigned(top)));

  if (workers == 1) {
    IsoSearch search(dom, cod, plan, dom_inv.fp, cod_inv.fp, budgets.aut_nodes, limit);
    return search.run(0, top, nodes);
  }

  // Split the top-level branches; each worker owns a contiguous range. The
  // result set is canonically sorted by the caller, so merge order is free.
  std::vector<std::vector<Perm>> partial(workers);
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> threads;
  for (unsigned w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        IsoSearch search(dom, cod, plan, dom_inv.fp, cod_inv.fp, budgets.aut_nodes, limit);
        const std::size_t lo = top * w / workers;
        const std::size_t hi = top * (w + 1) / workers;
        partial[w] = search.run(lo, hi, nodes);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::vector<Perm> all;
  for (auto& part : partial)
    for (auto& p : part) all.push_back(std::move(p));
  return all;
}

}  // namespace

AutGroup automorphisms(const GroupPtr& G, const std::vector<Subgroup>& stabilized,
                       const Budgets& budgets) {
  std::vector<const Subgroup*> constraints;
  for (const Subgroup& S : stabilized) {
    if (S.parent.get() != G.get())
      throw ValidationError("stabilized subgroup does not belong to the searched group");
    constraints.push_back(&S);
  }
  std::vector<Perm> elements =
      search_isomorphisms(*G, *G, constraints, constraints, static_cast<std::size_t>(-1), budgets);
  if (elements.empty()) throw InternalError("automorphism search lost the identity");
  return AutGroup(G, std::move(elements));
}

AutGroup inner_automorphisms(const GroupPtr& G, const std::optional<Subgroup>& source) {
  if (source && source->parent.get() != G.get())
    throw ValidationError("conjugating subgroup does not belong to the group");
  std::unordered_set<Perm, PermHash> set;
  const std::size_t n = G->order();
  auto add_conj = [&](Elt g) {
    Perm p(n);
    for (Elt x = 0; x < n; ++x) p[x] = G->conj(x, g);
    set.insert(std::move(p));
  };
  if (source) {
    for (Elt g : source->members) add_conj(g);
  } else {
    for (Elt g = 0; g < n; ++g) add_conj(g);
  }
  return AutGroup(G, std::vector<Perm>(set.begin(), set.end()));
}

Perm ad_conjugate(const GroupHom& psi, const Perm& f) {
  if (!psi.injective) throw ValidationError("ad requires an injective hom");
  const std::vector<Elt> back = psi.partial_inverse();
  Perm r(psi.dom->order());
  for (Elt y = 0; y < r.size(); ++y) {
    Elt v = f[psi.map[y]];
    if (back[v] == static_cast<Elt>(-1)) throw ValidationError("image not stabilized");
    r[y] = back[v];
  }
  return r;
}

std::optional<Perm> find_isomorphism(const GroupPtr& A, const GroupPtr& B, const Budgets& budgets) {
  std::vector<Perm> found = search_isomorphisms(*A, *B, {}, {}, 1, budgets);
  if (found.empty()) return std::nullopt;
  return std::move(found[0]);
}

}  // namespace amal
