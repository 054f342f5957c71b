// amal — classification of simplicial amalgams of finite groups
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "amal/amalgam.hpp"

namespace amal::presets {

GroupPtr trivial();
GroupPtr cyclic(int n);
GroupPtr dihedral8();
GroupPtr klein_four();
GroupPtr symmetric(int n);
GroupPtr quaternion8();  // built from its multiplication table

/// Names of the bundled example amalgams.
std::vector<std::string> names();

/// Construct a bundled example amalgam by name. Throws ValidationError on
/// unknown names.
AmalgamPtr amalgam(const std::string& name, const Budgets& budgets = {});

/// The parabolic amalgam of SL(3,2) acting on the Fano plane (1-simplex,
/// vertex groups of order 24 over an edge group of order 8).
AmalgamPtr sl3_fano(const Budgets& budgets = {});

/// The parabolic amalgam of SL(4,2) acting on PG(3,2) (full triangle,
/// vertex groups of orders 1344/576/1344, edge groups of order 192, top
/// group of order 64).
AmalgamPtr sl4_pg32(const Budgets& budgets = {});

}  // namespace amal::presets
