// Copyright 2026 The orfcs Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ORFCS_CONFIG_HPP_
#define ORFCS_CONFIG_HPP_

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "orfcs/experiments.hpp"

namespace orfcs {

using Json = nlohmann::ordered_json;

/// The full configuration document with every key at its default. Keys
/// absent here are rejected in files and overrides.
Json default_config();

/// Merges `overlay` into `base`. Throws ConfigError naming the dotted path of
/// any key that `base` does not define.
void merge_config(Json& base, const Json& overlay, const std::string& prefix = "");

/// Applies one `dotted.key=value` override. The value is parsed as JSON when
/// possible and taken as a string otherwise.
void apply_override(Json& config, std::string_view assignment);

/// Defaults, then the file (if non-empty), then each override in order.
Json resolve_config(const std::string& path, const std::vector<std::string>& overrides);

BasisSpec basis_from_json(const Json& j, const std::string& where);
Json to_json(const BasisSpec& spec);

/// Accepts a number, a [re, im] pair or {"re": .., "im": ..}.
cdouble pole_from_json(const Json& j, const std::string& where);

BpOptions solver_from_json(const Json& j);

/// 1-based indices from JSON, returned 0-based; each must lie in [1, limit].
std::vector<std::size_t> indices_from_json(const Json& j, std::size_t limit,
                                           const std::string& where);

ExperimentConfig phase_config_from_json(const Json& config);
UncertaintyConfig uncertainty_config_from_json(const Json& config);

}  // namespace orfcs

#endif  // ORFCS_CONFIG_HPP_
