// amal — classification of simplicial amalgams of finite groups
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "amal/config.hpp"

namespace amal::cli {

/// A fully parsed command-line job.
struct JobSpec {
  std::string command;  // validate | coeffs | h0 | h1 | classify | normalize |
                        // iso-check | goldschmidt | oracle | diff
  std::vector<std::string> inputs;
  Budgets budgets;
  bool machine = false;       // --json
  std::uint64_t seed = 0;     // echoed; used by randomized test drivers only
};

struct RunResult {
  int exit_code = 0;
  std::string out;  // report (stdout)
  std::string err;  // single-line machine-parsable reason on failure (stderr)
};

/// Executes a job: exit 0 on success, 1 on validation failure, 2 on budget
/// exhaustion, 3 on an internal invariant failure.
RunResult run(const JobSpec& job);

/// Compares two machine-mode reports (classification/oracle/h1): returns an
/// empty string when equal, otherwise the first divergence.
std::string diff_reports(const std::string& report_a, const std::string& report_b);

/// argv entry point used by the `amal` binary.
int main_entry(int argc, const char* const* argv);

}  // namespace amal::cli
