// amal — classification of simplicial amalgams of finite groups
// SPDX-License-Identifier: Apache-2.0

#include "amal/group.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

namespace amal {

std::uint32_t perm_order(const Perm& a) {
  std::vector<char> seen(a.size(), 0);
  std::uint64_t ord = 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (seen[i]) continue;
    std::uint64_t len = 0;
    for (std::size_t j = i; !seen[j]; j = a[j]) {
      seen[j] = 1;
      ++len;
    }
    ord = std::lcm(ord, len);
  }
  return static_cast<std::uint32_t>(ord);
}

namespace {

std::string triple_str(Elt a, Elt b, Elt c) {
  std::ostringstream os;
  os << "(" << a << ", " << b << ", " << c << ")";
  return os.str();
}

}  // namespace

Elt FiniteGroup::perm_mul(Elt a, Elt b) const {
  auto it = perm_index_.find(perm_then(perms_[a], perms_[b]));
  if (it == perm_index_.end()) throw InternalError("product left the element set");
  return it->second;
}

std::optional<Elt> FiniteGroup::index_of_perm(const Perm& p) const {
  auto it = perm_index_.find(p);
  if (it == perm_index_.end()) return std::nullopt;
  return it->second;
}

void FiniteGroup::finish_construction() {
  inverse_.assign(order_, 0);
  for (Elt a = 0; a < order_; ++a) {
    bool found = false;
    if (!perms_.empty()) {
      auto idx = index_of_perm(perm_inverse(perms_[a]));
      if (!idx) throw ValidationError("element set not closed under inverse");
      inverse_[a] = *idx;
      found = true;
    } else {
      for (Elt b = 0; b < order_; ++b) {
        if (mul(a, b) == identity) {
          if (mul(b, a) != identity)
            throw ValidationError("one-sided inverse: element " + std::to_string(a));
          inverse_[a] = b;
          found = true;
          break;
        }
      }
    }
    if (!found) throw ValidationError("no inverse for element " + std::to_string(a));
  }

  element_orders_.assign(order_, 1);
  for (Elt a = 0; a < order_; ++a) {
    if (!perms_.empty()) {
      element_orders_[a] = perm_order(perms_[a]);
    } else {
      std::uint32_t k = 1;
      Elt x = a;
      while (x != identity) {
        x = mul(x, a);
        ++k;
      }
      element_orders_[a] = k;
    }
  }
}

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<Elt>> table) {
  const std::size_t n = table.size();
  if (n == 0) throw ValidationError("empty multiplication table");
  for (std::size_t r = 0; r < n; ++r) {
    if (table[r].size() != n) throw ValidationError("multiplication table is not square");
    for (Elt v : table[r])
      if (v >= n) throw ValidationError("table entry out of range in row " + std::to_string(r));
  }

  // Identity fixed at index 0.
  for (Elt x = 0; x < n; ++x) {
    if (table[0][x] != x)
      throw ValidationError("identity violation: mul(0, " + std::to_string(x) +
                            ") = " + std::to_string(table[0][x]));
    if (table[x][0] != x)
      throw ValidationError("identity violation: mul(" + std::to_string(x) +
                            ", 0) = " + std::to_string(table[x][0]));
  }

  // Latin square: each row and column is a permutation.
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<char> seen(n, 0);
    for (Elt v : table[r]) {
      if (seen[v])
        throw ValidationError("row " + std::to_string(r) + " repeats element " + std::to_string(v));
      seen[v] = 1;
    }
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<char> seen(n, 0);
    for (std::size_t r = 0; r < n; ++r) {
      Elt v = table[r][c];
      if (seen[v])
        throw ValidationError("column " + std::to_string(c) + " repeats element " +
                              std::to_string(v));
      seen[v] = 1;
    }
  }

  // Associativity via Light's test: it is enough to check triples whose
  // middle factor runs over a generating set.
  std::vector<Elt> gens;
  {
    std::vector<char> reached(n, 0);
    reached[identity] = 1;
    std::size_t count = 1;
    while (count < n) {
      Elt fresh = 0;
      for (Elt x = 0; x < n; ++x)
        if (!reached[x]) {
          fresh = x;
          break;
        }
      gens.push_back(fresh);
      // close under right multiplication by existing reached elements and gens
      std::deque<Elt> queue;
      for (Elt x = 0; x < n; ++x)
        if (reached[x]) queue.push_back(x);
      reached[fresh] = 1;
      queue.push_back(fresh);
      ++count;
      while (!queue.empty()) {
        Elt x = queue.front();
        queue.pop_front();
        for (Elt g : gens) {
          for (Elt y : {table[x][g], table[g][x]}) {
            if (!reached[y]) {
              reached[y] = 1;
              ++count;
              queue.push_back(y);
            }
          }
        }
      }
    }
  }
  for (Elt a = 0; a < n; ++a)
    for (Elt g : gens)
      for (Elt c = 0; c < n; ++c)
        if (table[table[a][g]][c] != table[a][table[g][c]])
          throw ValidationError("associativity violation at triple " + triple_str(a, g, c));

  // Latin square + associativity + identity force two-sided inverses; treat
  // a failure here as a checker bug rather than bad input.
  for (Elt a = 0; a < n; ++a) {
    const Elt right = static_cast<Elt>(
        std::find(table[a].begin(), table[a].end(), identity) - table[a].begin());
    if (table[right][a] != identity)
      throw InternalError("inverse check failed after associativity passed, at element " +
                          std::to_string(a));
  }

  FiniteGroup G;
  G.order_ = n;
  G.table_.reserve(n * n);
  for (auto& row : table) G.table_.insert(G.table_.end(), row.begin(), row.end());
  G.finish_construction();
  return G;
}

FiniteGroup FiniteGroup::from_generators(std::size_t degree, const std::vector<Perm>& generators,
                                         const Budgets& budgets) {
  for (const Perm& g : generators) {
    if (g.size() != degree) throw ValidationError("generator degree mismatch");
    if (!is_permutation(g)) throw ValidationError("generator is not a permutation");
  }

  FiniteGroup G;
  G.degree_ = degree;
  G.perms_.push_back(identity_perm(degree));
  G.perm_index_.emplace(G.perms_[0], 0);
  for (std::size_t head = 0; head < G.perms_.size(); ++head) {
    for (const Perm& g : generators) {
      Perm p = perm_then(G.perms_[head], g);
      if (G.perm_index_.emplace(p, static_cast<Elt>(G.perms_.size())).second) {
        G.perms_.push_back(std::move(p));
        if (G.perms_.size() > budgets.max_order)
          throw BudgetError("order cap exceeded (max order " + std::to_string(budgets.max_order) +
                            ")");
      }
    }
  }
  G.order_ = G.perms_.size();
  if (G.order_ <= kDenseTableCap) {
    G.table_.assign(G.order_ * G.order_, 0);
    for (Elt a = 0; a < G.order_; ++a)
      for (Elt b = 0; b < G.order_; ++b) G.table_[a * G.order_ + b] = G.perm_mul(a, b);
  }
  G.finish_construction();
  return G;
}

FiniteGroup FiniteGroup::from_closed_perms(std::vector<Perm> elements) {
  if (elements.empty()) throw ValidationError("empty element set");
  if (!is_identity_perm(elements[0]))
    throw ValidationError("element 0 must be the identity permutation");
  FiniteGroup G;
  G.degree_ = elements[0].size();
  G.perms_ = std::move(elements);
  for (Elt i = 0; i < G.perms_.size(); ++i) {
    if (G.perms_[i].size() != G.degree_) throw ValidationError("mixed degrees in element set");
    if (!G.perm_index_.emplace(G.perms_[i], i).second)
      throw ValidationError("duplicate element in element set");
  }
  G.order_ = G.perms_.size();
  if (G.order_ <= kDenseTableCap) {
    G.table_.assign(G.order_ * G.order_, 0);
    for (Elt a = 0; a < G.order_; ++a)
      for (Elt b = 0; b < G.order_; ++b) G.table_[a * G.order_ + b] = G.perm_mul(a, b);
  }
  G.finish_construction();
  return G;
}

void FiniteGroup::set_labels(std::vector<std::string> labels) {
  if (labels.size() != order_) throw ValidationError("label count != group order");
  labels_ = std::move(labels);
}

std::string FiniteGroup::label_of(Elt a) const {
  if (labels_) return (*labels_)[a];
  return "#" + std::to_string(a);
}

bool FiniteGroup::same_table(const FiniteGroup& other) const {
  if (order_ != other.order_) return false;
  for (Elt a = 0; a < order_; ++a)
    for (Elt b = 0; b < order_; ++b)
      if (mul(a, b) != other.mul(a, b)) return false;
  return true;
}

std::vector<Elt> FiniteGroup::generating_set() const {
  std::vector<Elt> gens;
  std::vector<char> reached(order_, 0);
  reached[identity] = 1;
  std::size_t count = 1;
  while (count < order_) {
    // The first unreached element gives a deterministic choice.
    Elt fresh = 0;
    for (Elt x = 0; x < order_; ++x)
      if (!reached[x]) {
        fresh = x;
        break;
      }
    gens.push_back(fresh);
    std::deque<Elt> queue;
    for (Elt x = 0; x < order_; ++x)
      if (reached[x]) queue.push_back(x);
    while (!queue.empty()) {
      Elt x = queue.front();
      queue.pop_front();
      for (Elt g : gens) {
        Elt y = mul(x, g);
        if (!reached[y]) {
          reached[y] = 1;
          ++count;
          queue.push_back(y);
        }
      }
    }
  }
  return gens;
}

std::size_t FiniteGroup::centralizer_size(Elt a) const {
  std::size_t c = 0;
  for (Elt x = 0; x < order_; ++x)
    if (mul(x, a) == mul(a, x)) ++c;
  return c;
}

Elt Subgroup::position_of(Elt a) const {
  auto it = std::lower_bound(members.begin(), members.end(), a);
  if (it == members.end() || *it != a) throw InternalError("element is not a subgroup member");
  return static_cast<Elt>(it - members.begin());
}

FiniteGroup Subgroup::as_group() const {
  const std::size_t m = members.size();
  if (parent->has_perms()) {
    std::vector<Perm> perms;
    perms.reserve(m);
    for (Elt a : members) perms.push_back(parent->perm_of(a));
    return FiniteGroup::from_closed_perms(std::move(perms));
  }
  std::vector<std::vector<Elt>> table(m, std::vector<Elt>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      table[i][j] = position_of(parent->mul(members[i], members[j]));
  return FiniteGroup::from_table(std::move(table));
}

namespace {

Subgroup make_subgroup(GroupPtr parent, std::vector<char>& in) {
  Subgroup S;
  S.parent = std::move(parent);
  S.member_mask.assign(in.begin(), in.end());
  for (Elt x = 0; x < in.size(); ++x)
    if (in[x]) S.members.push_back(x);
  return S;
}

}  // namespace

Subgroup subgroup_closure(const GroupPtr& G, const std::vector<Elt>& seed) {
  // Every subgroup element is a word in the seed elements and their
  // inverses, so right-multiplication BFS from the identity suffices.
  std::vector<Elt> gens;
  for (Elt s : seed) {
    if (s >= G->order()) throw ValidationError("seed element out of range");
    gens.push_back(s);
    gens.push_back(G->inv(s));
  }
  std::vector<char> in(G->order(), 0);
  in[FiniteGroup::identity] = 1;
  std::deque<Elt> queue{FiniteGroup::identity};
  while (!queue.empty()) {
    Elt x = queue.front();
    queue.pop_front();
    for (Elt g : gens) {
      Elt z = G->mul(x, g);
      if (!in[z]) {
        in[z] = 1;
        queue.push_back(z);
      }
    }
  }
  return make_subgroup(G, in);
}

Subgroup subgroup_intersection(const Subgroup& a, const Subgroup& b) {
  if (a.parent.get() != b.parent.get())
    throw ValidationError("subgroup intersection across different parents");
  std::vector<char> in(a.parent->order(), 0);
  for (Elt x : a.members)
    if (b.contains(x)) in[x] = 1;
  return make_subgroup(a.parent, in);
}

Subgroup center(const GroupPtr& G) {
  std::vector<char> in(G->order(), 0);
  for (Elt x = 0; x < G->order(); ++x) {
    bool central = true;
    for (Elt y = 0; y < G->order() && central; ++y)
      central = G->mul(x, y) == G->mul(y, x);
    if (central) in[x] = 1;
  }
  return make_subgroup(G, in);
}

GroupHom GroupHom::identity_on(const GroupPtr& G) {
  GroupHom h;
  h.dom = G;
  h.cod = G;
  h.map.resize(G->order());
  std::iota(h.map.begin(), h.map.end(), 0u);
  h.injective = true;
  return h;
}

Subgroup GroupHom::image() const {
  std::vector<char> in(cod->order(), 0);
  for (Elt v : map) in[v] = 1;
  return make_subgroup(cod, in);
}

std::vector<Elt> GroupHom::partial_inverse() const {
  if (!injective) throw InternalError("partial inverse of a non-injective hom");
  std::vector<Elt> inv(cod->order(), static_cast<Elt>(-1));
  for (Elt a = 0; a < map.size(); ++a) inv[map[a]] = a;
  return inv;
}

HomReport validate_hom(const GroupHom& h) {
  HomReport rep;
  if (h.map.size() != h.dom->order()) {
    rep.ok = false;
    rep.violation = "map length != domain order";
    return rep;
  }
  for (Elt v : h.map)
    if (v >= h.cod->order()) {
      rep.ok = false;
      rep.violation = "map value out of codomain range";
      return rep;
    }
  if (h.map[FiniteGroup::identity] != FiniteGroup::identity) {
    rep.ok = false;
    rep.violation = "identity not mapped to identity";
    return rep;
  }
  for (Elt a = 0; a < h.dom->order(); ++a)
    for (Elt b = 0; b < h.dom->order(); ++b)
      if (h.map[h.dom->mul(a, b)] != h.cod->mul(h.map[a], h.map[b])) {
        rep.ok = false;
        rep.violation = "multiplicativity fails at pair (" + std::to_string(a) + ", " +
                        std::to_string(b) + ")";
        return rep;
      }
  std::vector<char> seen(h.cod->order(), 0);
  rep.injective = true;
  for (Elt v : h.map) {
    if (seen[v]) {
      rep.injective = false;
      break;
    }
    seen[v] = 1;
  }
  if (h.injective && !rep.injective) {
    rep.ok = false;
    rep.violation = "hom claims injectivity but is not injective";
  }
  return rep;
}

GroupHom compose_homs(const GroupHom& g, const GroupHom& f) {
  if (f.cod.get() != g.dom.get() && !f.cod->same_table(*g.dom))
    throw ValidationError("hom composition: codomain/domain mismatch");
  GroupHom r;
  r.dom = f.dom;
  r.cod = g.cod;
  r.map.resize(f.map.size());
  for (Elt a = 0; a < f.map.size(); ++a) r.map[a] = g.map[f.map[a]];
  r.injective = f.injective && g.injective;
  return r;
}

bool homs_equal(const GroupHom& a, const GroupHom& b) { return a.map == b.map; }

}  // namespace amal
