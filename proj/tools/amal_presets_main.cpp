// amal — classification of simplicial amalgams of finite groups
// SPDX-License-Identifier: Apache-2.0
//
// Writes the bundled example amalgams as JSON files, so the CLI and the
// test fixtures share one source of truth.

#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "amal/io.hpp"
#include "amal/presets.hpp"

int main(int argc, char** argv) {
  CLI::App app{"amal-presets — materialize bundled example amalgams as JSON"};
  bool list = false;
  std::string name, out, out_dir;
  std::uint64_t max_order = 20160;
  app.add_flag("--list", list, "list available preset names");
  app.add_option("--name", name, "preset to write (see --list)");
  app.add_option("--out", out, "output file (default: stdout)");
  app.add_option("--out-dir", out_dir, "write every preset except the SL4 instance here");
  app.add_option("--max-order", max_order, "largest allowed group order");
  CLI11_PARSE(app, argc, argv);

  amal::Budgets budgets;
  budgets.max_order = max_order;

  try {
    if (list) {
      for (const std::string& n : amal::presets::names()) std::printf("%s\n", n.c_str());
      return 0;
    }
    if (!out_dir.empty()) {
      for (const std::string& n : amal::presets::names()) {
        if (n == "sl4-pg32") continue;  // several MB of tables; written on request only
        amal::io::write_amalgam_file(*amal::presets::amalgam(n, budgets),
                                     out_dir + "/" + n + ".json");
      }
      return 0;
    }
    if (name.empty()) {
      std::fprintf(stderr, "error: one of --list, --name, --out-dir is required\n");
      return 1;
    }
    const auto G = amal::presets::amalgam(name, budgets);
    if (out.empty()) {
      std::fputs(amal::io::amalgam_to_json(*G).c_str(), stdout);
    } else {
      amal::io::write_amalgam_file(*G, out);
    }
    return 0;
  } catch (const amal::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
