// amal — classification of simplicial amalgams of finite groups
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "amal/presets.hpp"

namespace amal::testing {

/// The desk-scale fixture suite (all group orders <= 48): trivial amalgams,
/// a cyclic chain, Goldschmidt edge instances and three full triangles.
inline std::vector<std::string> small_fixtures() {
  return {"trivial-edge",      "trivial-triangle",  "chain-z8-z4",
          "edge-z4-v4",        "goldschmidt-d8-v4", "goldschmidt-s4-d8",
          "edge-q8-z4",        "triangle-s3",       "triangle-d8",
          "triangle-d12-s3",   "triangle-s4-d8-v4", "tetra-z3",
          "sl3-fano"};
}

/// Fixtures whose full type enumeration stays within the default oracle
/// budgets.
inline std::vector<std::string> oracle_fixtures() {
  return {"trivial-edge",      "trivial-triangle",  "chain-z8-z4",
          "edge-z4-v4",        "goldschmidt-d8-v4", "goldschmidt-s4-d8",
          "edge-q8-z4",        "triangle-s3",       "triangle-d8",
          "triangle-d12-s3",   "triangle-s4-d8-v4", "tetra-z3",
          "sl3-fano"};
}

/// Rank-1 fixtures for the Goldschmidt double-coset comparisons.
inline std::vector<std::string> edge_fixtures() {
  return {"trivial-edge", "edge-z4-v4", "goldschmidt-d8-v4", "goldschmidt-s4-d8", "edge-q8-z4",
          "sl3-fano"};
}

/// Deterministic xorshift generator for the property tests.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed ? seed : 0x9e3779b97f4a7c15ull) {}
  std::uint64_t next() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return state;
  }
  std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }
};

}  // namespace amal::testing
