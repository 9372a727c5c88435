// Copyright 2026 The orfcs Authors
// SPDX-License-Identifier: Apache-2.0

#include "orfcs/config.hpp"

#include <fstream>
#include <sstream>

#include "orfcs/error.hpp"

namespace orfcs {

namespace {

[[noreturn]] void config_error(const std::string& msg) {
  throw Error(ErrorCode::ConfigError, msg);
}

const Json& require(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) config_error(where + "." + key + " is missing");
  return j.at(key);
}

double get_double(const Json& j, const char* key, const std::string& where) {
  const Json& v = require(j, key, where);
  if (!v.is_number()) config_error(where + "." + key + " must be a number");
  return v.get<double>();
}

std::size_t get_count(const Json& j, const char* key, const std::string& where) {
  const Json& v = require(j, key, where);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    config_error(where + "." + key + " must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

std::vector<std::size_t> get_counts(const Json& j, const char* key, const std::string& where) {
  const Json& v = require(j, key, where);
  if (!v.is_array()) config_error(where + "." + key + " must be an array of integers");
  std::vector<std::size_t> out;
  for (const Json& e : v) {
    if (!e.is_number_integer() || e.get<long long>() < 0) {
      config_error(where + "." + key + " must hold non-negative integers");
    }
    out.push_back(e.get<std::size_t>());
  }
  return out;
}

std::string get_string(const Json& j, const char* key, const std::string& where) {
  const Json& v = require(j, key, where);
  if (!v.is_string()) config_error(where + "." + key + " must be a string");
  return v.get<std::string>();
}

}  // namespace

Json default_config() {
  return Json::parse(R"({
    "basis_a": {"kind": "fir", "poles": [], "order": 8, "real_coefficients": true},
    "basis_b": {"kind": "laguerre", "poles": [0.5], "order": 8, "real_coefficients": true},
    "n_grid": 256,
    "seed": 1,
    "threads": 0,
    "solver": {"feas_tol": 1e-9, "opt_tol": 1e-9, "max_iters": 200, "method": "auto",
               "polish": true},
    "coherence": {"n1": null, "n2": null},
    "orthotest": {"write_dictionary": false},
    "reconstruct": {"measurements": null, "sampling": "uniform", "m": null, "omega": null,
                    "plant": {"support": [], "values": []}},
    "certify": {"sampling": "uniform", "m": null, "omega": null, "support": [],
                "signs": null},
    "bound": {"t1": [1], "t2": [1], "delta": 0.1, "c": 1.0},
    "phase": {"m_values": [4, 8, 16, 32], "t_sizes": [2], "trials": 200,
              "sampling": "uniform", "success_tol": 1e-6},
    "concentration": {"t1": [1, 2], "t2": [1, 2], "m": 48, "trials": 500, "delta": 0.1},
    "uncertainty": {"window_a": 8, "max_sparsity": 3, "instances": 1000,
                    "epsilons": [0.001, 0.01, 0.1]}
  })");
}

void merge_config(Json& base, const Json& overlay, const std::string& prefix) {
  if (!overlay.is_object()) config_error("configuration root must be a JSON object");
  for (auto it = overlay.begin(); it != overlay.end(); ++it) {
    const std::string path = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (!base.contains(it.key())) config_error("unknown configuration key '" + path + "'");
    Json& slot = base[it.key()];
    if (slot.is_object()) {
      if (!it.value().is_object()) config_error("'" + path + "' must be an object");
      merge_config(slot, it.value(), path);
    } else {
      slot = it.value();
    }
  }
}

void apply_override(Json& config, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    config_error("override '" + std::string(assignment) + "' is not of the form key=value");
  }
  const std::string key(assignment.substr(0, eq));
  const std::string text(assignment.substr(eq + 1));
  Json value = Json::parse(text, nullptr, false);
  if (value.is_discarded()) value = text;

  // Build the nested overlay {"a": {"b": value}} and merge it, so overrides
  // obey the same key checks as files.
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto dot = key.find('.', start);
    parts.push_back(key.substr(start, dot - start));
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  Json overlay = value;
  for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
    if (it->empty()) config_error("override key '" + key + "' has an empty component");
    Json wrapped = Json::object();
    wrapped[*it] = std::move(overlay);
    overlay = std::move(wrapped);
  }
  merge_config(config, overlay);
}

Json resolve_config(const std::string& path, const std::vector<std::string>& overrides) {
  Json config = default_config();
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) config_error("cannot open configuration file '" + path + "'");
    Json file = Json::parse(in, nullptr, false);
    if (file.is_discarded()) config_error("configuration file '" + path + "' is not valid JSON");
    merge_config(config, file);
  }
  for (const std::string& o : overrides) apply_override(config, o);
  return config;
}

cdouble pole_from_json(const Json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  if (j.is_object() && j.contains("re") && j.contains("im") && j["re"].is_number() &&
      j["im"].is_number() && j.size() == 2) {
    return {j["re"].get<double>(), j["im"].get<double>()};
  }
  config_error(where + " must be a number, a [re, im] pair or {\"re\", \"im\"}");
}

BasisSpec basis_from_json(const Json& j, const std::string& where) {
  BasisSpec spec;
  spec.kind = basis_kind_from_string(get_string(j, "kind", where));
  spec.order = get_count(j, "order", where);
  const Json& rc = require(j, "real_coefficients", where);
  if (!rc.is_boolean()) config_error(where + ".real_coefficients must be a boolean");
  spec.real_coefficients = rc.get<bool>();
  const Json& poles = require(j, "poles", where);
  if (!poles.is_array()) config_error(where + ".poles must be an array");
  for (std::size_t i = 0; i < poles.size(); ++i) {
    spec.poles.push_back(pole_from_json(poles[i], where + ".poles[" + std::to_string(i) + "]"));
  }
  return spec;
}

Json to_json(const BasisSpec& spec) {
  Json poles = Json::array();
  for (const cdouble& p : spec.poles) {
    if (p.imag() == 0.0) {
      poles.push_back(p.real());
    } else {
      poles.push_back(Json::array({p.real(), p.imag()}));
    }
  }
  return Json{{"kind", std::string(to_string(spec.kind))},
              {"poles", poles},
              {"order", spec.order},
              {"real_coefficients", spec.real_coefficients}};
}

BpOptions solver_from_json(const Json& j) {
  BpOptions o;
  o.feas_tol = get_double(j, "feas_tol", "solver");
  o.opt_tol = get_double(j, "opt_tol", "solver");
  o.max_iters = static_cast<int>(get_count(j, "max_iters", "solver"));
  const std::string method = get_string(j, "method", "solver");
  if (method == "auto") {
    o.method = SolverMethod::Auto;
  } else if (method == "interior_point" || method == "ipm") {
    o.method = SolverMethod::InteriorPoint;
  } else if (method == "admm") {
    o.method = SolverMethod::Admm;
  } else {
    config_error("solver.method must be one of auto, interior_point, admm");
  }
  const Json& polish = require(j, "polish", "solver");
  if (!polish.is_boolean()) config_error("solver.polish must be a boolean");
  o.polish = polish.get<bool>();
  if (!(o.feas_tol > 0.0) || !(o.opt_tol > 0.0)) {
    config_error("solver tolerances must be positive");
  }
  if (o.max_iters < 1) config_error("solver.max_iters must be at least 1");
  return o;
}

std::vector<std::size_t> indices_from_json(const Json& j, std::size_t limit,
                                           const std::string& where) {
  if (!j.is_array()) config_error(where + " must be an array of 1-based indices");
  std::vector<std::size_t> out;
  for (const Json& e : j) {
    if (!e.is_number_integer() || e.get<long long>() < 1 ||
        e.get<unsigned long long>() > limit) {
      config_error(where + " entries must be integers in [1, " + std::to_string(limit) + "]");
    }
    out.push_back(e.get<std::size_t>() - 1);
  }
  return out;
}

ExperimentConfig phase_config_from_json(const Json& config) {
  ExperimentConfig c;
  c.basis_a = basis_from_json(config.at("basis_a"), "basis_a");
  c.basis_b = basis_from_json(config.at("basis_b"), "basis_b");
  c.n_grid = get_count(config, "n_grid", "config");
  c.seed = require(config, "seed", "config").get<std::uint64_t>();
  c.threads = static_cast<unsigned>(get_count(config, "threads", "config"));
  c.solver = solver_from_json(config.at("solver"));
  const Json& p = config.at("phase");
  c.m_values = get_counts(p, "m_values", "phase");
  c.t_sizes = get_counts(p, "t_sizes", "phase");
  c.trials = get_count(p, "trials", "phase");
  c.sampling = sampling_model_from_string(get_string(p, "sampling", "phase"));
  c.success_tol = get_double(p, "success_tol", "phase");
  c.validate();
  return c;
}

UncertaintyConfig uncertainty_config_from_json(const Json& config) {
  UncertaintyConfig c;
  c.basis_a = basis_from_json(config.at("basis_a"), "basis_a");
  c.basis_b = basis_from_json(config.at("basis_b"), "basis_b");
  c.seed = require(config, "seed", "config").get<std::uint64_t>();
  const Json& u = config.at("uncertainty");
  c.window_a = get_count(u, "window_a", "uncertainty");
  c.max_sparsity = get_count(u, "max_sparsity", "uncertainty");
  c.instances = get_count(u, "instances", "uncertainty");
  const Json& eps = require(u, "epsilons", "uncertainty");
  if (!eps.is_array()) config_error("uncertainty.epsilons must be an array");
  c.epsilons.clear();
  for (const Json& e : eps) {
    if (!e.is_number()) config_error("uncertainty.epsilons must hold numbers");
    c.epsilons.push_back(e.get<double>());
  }
  return c;
}

}  // namespace orfcs
