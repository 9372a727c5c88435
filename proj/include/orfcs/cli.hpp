// Copyright 2026 The orfcs Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ORFCS_CLI_HPP_
#define ORFCS_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace orfcs::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitSolver = 3;

std::string version();

/// Runs one command line (args[0] is the program name). Results go to `out`
/// as JSON unless --quiet; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace orfcs::cli

#endif  // ORFCS_CLI_HPP_
