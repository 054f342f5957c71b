// amal — classification of simplicial amalgams of finite groups
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <vector>

namespace amal {

/// Index of an element inside a FiniteGroup (identity is always 0).
using Elt = std::uint32_t;

/// A permutation stored as its image vector: p[i] is the image of point i.
using Perm = std::vector<std::uint32_t>;

inline Perm identity_perm(std::size_t degree) {
  Perm p(degree);
  std::iota(p.begin(), p.end(), 0u);
  return p;
}

/// Composition in application order: (a, then b), i.e. x -> b[a[x]].
inline Perm perm_then(const Perm& a, const Perm& b) {
  Perm r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = b[a[i]];
  return r;
}

inline Perm perm_inverse(const Perm& a) {
  Perm r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[a[i]] = static_cast<std::uint32_t>(i);
  return r;
}

inline bool is_permutation(const Perm& a) {
  std::vector<char> seen(a.size(), 0);
  for (auto v : a) {
    if (v >= a.size() || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

inline bool is_identity_perm(const Perm& a) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != i) return false;
  return true;
}

/// Multiplicative order, from the cycle structure.
std::uint32_t perm_order(const Perm& a);

struct PermHash {
  std::size_t operator()(const Perm& p) const {
    std::size_t h = 1469598103934665603ull;
    for (auto v : p) {
      h ^= v;
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace amal
