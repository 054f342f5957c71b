// amal — classification of simplicial amalgams of finite groups
// SPDX-License-Identifier: Apache-2.0

#include "amal/complex.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace amal {

std::string simplex_name(const Simplex& s) {
  std::ostringstream os;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) os << ",";
    os << s[i];
  }
  return os.str();
}

SimplicialComplex SimplicialComplex::build(int n_vertices, const std::vector<Simplex>& declared) {
  if (n_vertices <= 0) throw ValidationError("complex needs at least one vertex");

  std::unordered_map<Simplex, int, SimplexHash> seen;
  std::vector<Simplex> all;
  auto add = [&](Simplex s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (seen.emplace(s, 0).second) all.push_back(std::move(s));
  };

  for (int v = 1; v <= n_vertices; ++v) add({v});
  for (const Simplex& s : declared) {
    if (s.empty()) throw ValidationError("empty simplex declared");
    for (int v : s)
      if (v < 1 || v > n_vertices)
        throw ValidationError("vertex " + std::to_string(v) + " out of range 1.." +
                              std::to_string(n_vertices));
    add(s);
  }

  // Downward closure: subsets generated facet-by-facet.
  for (std::size_t head = 0; head < all.size(); ++head) {
    Simplex s = all[head];
    if (s.size() < 2) continue;
    for (std::size_t drop = 0; drop < s.size(); ++drop) {
      Simplex face;
      for (std::size_t i = 0; i < s.size(); ++i)
        if (i != drop) face.push_back(s[i]);
      add(std::move(face));
    }
  }

  // Connectivity of the rank-<=1 skeleton.
  {
    std::vector<std::vector<int>> adj(n_vertices + 1);
    for (const Simplex& s : all)
      if (s.size() == 2) {
        adj[s[0]].push_back(s[1]);
        adj[s[1]].push_back(s[0]);
      }
    std::vector<char> vis(n_vertices + 1, 0);
    std::deque<int> queue{1};
    vis[1] = 1;
    int count = 1;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (int w : adj[v])
        if (!vis[w]) {
          vis[w] = 1;
          ++count;
          queue.push_back(w);
        }
    }
    if (count != n_vertices) throw ValidationError("complex not connected");
  }

  SimplicialComplex X;
  X.n_vertices_ = n_vertices;
  std::sort(all.begin(), all.end(), [](const Simplex& a, const Simplex& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  X.simplices_ = std::move(all);
  for (std::size_t i = 0; i < X.simplices_.size(); ++i) {
    X.index_[X.simplices_[i]] = static_cast<int>(i);
    const int r = simplex_rank(X.simplices_[i]);
    X.max_rank_ = std::max(X.max_rank_, r);
    if (static_cast<int>(X.by_rank_.size()) <= r) X.by_rank_.resize(r + 1);
    X.by_rank_[r].push_back(static_cast<int>(i));
  }
  for (std::size_t t = 0; t < X.simplices_.size(); ++t) {
    if (X.simplices_[t].size() < 2) continue;
    std::vector<int> facet_ids;
    for (const Simplex& f : boundary(X.simplices_[t])) facet_ids.push_back(X.id_of(f));
    std::sort(facet_ids.begin(), facet_ids.end());
    for (int s : facet_ids) X.cover_pairs_.emplace_back(s, static_cast<int>(t));
  }
  return X;
}

int SimplicialComplex::id_of(const Simplex& s) const {
  auto it = index_.find(s);
  if (it == index_.end())
    throw ValidationError("not a simplex of this complex: {" + simplex_name(s) + "}");
  return it->second;
}

bool SimplicialComplex::contains(const Simplex& s) const { return index_.count(s) != 0; }

const std::vector<int>& SimplicialComplex::of_rank(int r) const {
  static const std::vector<int> empty;
  if (r < 0 || r >= static_cast<int>(by_rank_.size())) return empty;
  return by_rank_[r];
}

bool SimplicialComplex::is_face(int sigma, int tau) const {
  const Simplex& s = simplices_[sigma];
  const Simplex& t = simplices_[tau];
  return std::includes(t.begin(), t.end(), s.begin(), s.end());
}

std::vector<Simplex> boundary(const Simplex& tau) {
  std::vector<Simplex> faces;
  if (tau.size() < 2) return faces;
  for (std::size_t j = 0; j < tau.size(); ++j) {
    Simplex f;
    for (std::size_t i = 0; i < tau.size(); ++i)
      if (i != j) f.push_back(tau[i]);
    faces.push_back(std::move(f));
  }
  return faces;
}

Simplex bar(const Simplex& tau) {
  if (tau.size() < 2) throw ValidationError("bar of a rank-0 simplex");
  return Simplex(tau.begin() + 1, tau.end());
}

SimplicialComplex extend_with_small_subsets(const SimplicialComplex& X, int k) {
  if (k < 1) throw ValidationError("subset size bound must be >= 1");
  std::vector<Simplex> declared = X.simplices();
  const int n = X.n_vertices();
  // Enumerate all subsets of size <= k via bitmasks of the k smallest...
  // n is small in practice; straightforward subset recursion.
  Simplex current;
  auto rec = [&](auto&& self, int next) -> void {
    if (!current.empty()) declared.push_back(current);
    if (static_cast<int>(current.size()) == k) return;
    for (int v = next; v <= n; ++v) {
      current.push_back(v);
      self(self, v + 1);
      current.pop_back();
    }
  };
  rec(rec, 1);
  return SimplicialComplex::build(n, declared);
}

}  // namespace amal
