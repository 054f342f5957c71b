// amal — classification of simplicial amalgams of finite groups
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace amal {

/// Resource limits for the expensive searches. All searches count abstract
/// work units (nodes, states, moves), never wall time, so a given budget
/// produces the same result on every machine.
struct Budgets {
  /// Largest group order `group_from_generators` will close over.
  std::uint64_t max_order = 20160;
  /// Partial-assignment nodes the automorphism backtracking may visit.
  std::uint64_t aut_nodes = 10'000'000;
  /// Number of 1-cocycles the Z^1 enumeration may emit.
  std::uint64_t cocycles = 1'000'000;
  /// Generator moves the orbit sweeps (H^1, double cosets) may apply.
  std::uint64_t orbit_moves = 10'000'000;
  /// Assignment nodes the exhaustive oracle may visit while enumerating.
  std::uint64_t oracle_states = 10'000'000;
  /// Worker threads for the searches that fan out.
  unsigned workers = 1;
};

/// Base class of everything thrown by the library.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid input: a table that is not a group, an incoherent amalgam,
/// a malformed file. Maps to exit code 1 in the CLI.
struct ValidationError : Error {
  using Error::Error;
};

/// A configured budget was exhausted before the computation finished.
/// Maps to exit code 2 in the CLI.
struct BudgetError : Error {
  using Error::Error;
};

/// A theorem the implementation relies on failed to hold at runtime.
/// Always a bug (here or in the input validation), never a user error.
struct InternalError : Error {
  using Error::Error;
};

}  // namespace amal
