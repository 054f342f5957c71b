// amal — classification of simplicial amalgams of finite groups
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "amal/config.hpp"

namespace amal {

/// A simplex: sorted list of vertices (vertices are 1..n).
using Simplex = std::vector<int>;

inline int simplex_rank(const Simplex& s) { return static_cast<int>(s.size()) - 1; }

std::string simplex_name(const Simplex& s);  // "1,2,3"

struct SimplexHash {
  std::size_t operator()(const Simplex& s) const {
    std::size_t h = 1469598103934665603ull;
    for (int v : s) {
      h ^= static_cast<std::size_t>(v);
      h *= 1099511628211ull;
    }
    return h;
  }
};

/// A finite, downward-closed, connected family of non-empty vertex subsets.
/// Simplices are canonically ordered by (rank, lexicographic) and addressed
/// by their index in that order.
class SimplicialComplex {
 public:
  /// Downward closure of the declared simplices; validates connectivity and
  /// that every vertex 1..n occurs.
  static SimplicialComplex build(int n_vertices, const std::vector<Simplex>& declared);

  int n_vertices() const { return n_vertices_; }
  std::size_t size() const { return simplices_.size(); }

  const Simplex& simplex(int id) const { return simplices_[id]; }
  const std::vector<Simplex>& simplices() const { return simplices_; }

  int id_of(const Simplex& s) const;        // throws ValidationError if absent
  bool contains(const Simplex& s) const;

  int rank() const { return max_rank_; }

  /// Ids of all simplices of the given rank, ascending.
  const std::vector<int>& of_rank(int r) const;

  /// Covering face pairs (sigma, tau) with sigma a facet of tau, as id pairs,
  /// in canonical order (tau ascending, then sigma ascending).
  const std::vector<std::pair<int, int>>& cover_pairs() const { return cover_pairs_; }

  bool is_face(int sigma, int tau) const;  // sigma subseteq tau

 private:
  int n_vertices_ = 0;
  int max_rank_ = 0;
  std::vector<Simplex> simplices_;
  std::unordered_map<Simplex, int, SimplexHash> index_;
  std::vector<std::vector<int>> by_rank_;
  std::vector<std::pair<int, int>> cover_pairs_;
};

using ComplexPtr = std::shared_ptr<const SimplicialComplex>;

/// The faces tau_1..tau_k of tau, where tau_j drops the j-th smallest
/// vertex; this is the ordering the coboundary signs rely on.
std::vector<Simplex> boundary(const Simplex& tau);

/// The least face in boundary order: tau minus its smallest vertex.
Simplex bar(const Simplex& tau);

/// X with every non-empty vertex subset of size <= k added as a simplex.
SimplicialComplex extend_with_small_subsets(const SimplicialComplex& X, int k);

}  // namespace amal
