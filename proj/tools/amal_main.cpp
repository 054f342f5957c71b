// amal — classification of simplicial amalgams of finite groups
// SPDX-License-Identifier: Apache-2.0

#include "amal/cli.hpp"

int main(int argc, char** argv) { return amal::cli::main_entry(argc, argv); }
