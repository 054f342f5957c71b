// amal — classification of simplicial amalgams of finite groups
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "amal/amalgam.hpp"

namespace amal::io {

/// Parses the amalgam file schema:
/// {
///   "complex": {"vertices": n, "simplices": [[1,2], ...]},
///   "groups": {"1": <group>, "1,2": <group or name>, ...},
///   "maps": [{"from": [1,2], "to": [1], "map": [0, ...]}, ...],
///   "named_groups": {"name": <group>}          (optional)
/// }
/// where <group> is either
///   {"kind": "permutation", "degree": d, "generators": [[...], ...]}
/// or
///   {"kind": "table", "table": [[...], ...]}
/// with optional "name" and "labels". Malformed input throws
/// ValidationError naming the offending field.
AmalgamPtr parse_amalgam(const std::string& json_text, const Budgets& budgets = {});

AmalgamPtr read_amalgam_file(const std::string& path, const Budgets& budgets = {});

/// Serializes an amalgam back into the file schema (round-trippable,
/// byte-stable for a fixed amalgam).
std::string amalgam_to_json(const Amalgam& G, int indent = 2);

void write_amalgam_file(const Amalgam& G, const std::string& path);

}  // namespace amal::io
