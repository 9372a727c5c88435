// Copyright 2026 The orfcs Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>
#include <string>
#include <vector>

#include "orfcs/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return orfcs::cli::run(args, std::cout, std::cerr);
}
