// Copyright 2026 The orfcs Authors
// SPDX-License-Identifier: Apache-2.0

#include "orfcs/cli.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "orfcs/config.hpp"
#include "orfcs/error.hpp"
#include "orfcs/experiments.hpp"
#include "orfcs/hardy_space.hpp"
#include "orfcs/kernels.hpp"
#include "orfcs/recovery.hpp"
#include "orfcs/rng.hpp"
#include "orfcs/sampling.hpp"

#ifndef ORFCS_VERSION
#define ORFCS_VERSION "0.0.0"
#endif

namespace orfcs::cli {

namespace {

constexpr int kConfigSchema = 1;

struct Artifact {
  std::string name;
  std::string content;
};

struct Outcome {
  Json body;
  std::vector<Artifact> artifacts;
  Json run = Json::object();  // wall-clock data, kept out of the body
  int exit_code = kExitOk;
};

struct Options {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir;
  int threads = -1;
  bool quiet = false;
  bool verbose = false;
};

Json one_based(const std::vector<std::size_t>& idx) {
  Json a = Json::array();
  for (std::size_t i : idx) a.push_back(i + 1);
  return a;
}

Json vector_json(const Eigen::VectorXd& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

// Non-finite values become null so the output stays valid JSON.
Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    f << content;
    f.flush();
    if (!f) throw std::runtime_error("write to '" + tmp.string() + "' failed");
  }
  std::filesystem::rename(tmp, path);
}

DictionaryMatrix dictionary_from(const Json& config) {
  const BasisSpec a = basis_from_json(config.at("basis_a"), "basis_a");
  const BasisSpec b = basis_from_json(config.at("basis_b"), "basis_b");
  const auto n = config.at("n_grid").get<std::size_t>();
  return build_dictionary(a, b, n);
}

std::vector<std::size_t> choose_rows(const Json& section, const Json& config,
                                     std::size_t n_grid, const std::string& where) {
  if (!section.at("omega").is_null()) {
    std::vector<std::size_t> omega = indices_from_json(section.at("omega"), n_grid, where + ".omega");
    if (omega.empty()) throw Error(ErrorCode::MOutOfRange, where + ".omega is empty");
    return omega;
  }
  MeasurementPlan plan;
  plan.model = sampling_model_from_string(section.at("sampling").get<std::string>());
  plan.m = section.at("m").is_null() ? n_grid : section.at("m").get<std::size_t>();
  plan.seed = config.at("seed").get<std::uint64_t>();
  std::vector<std::size_t> omega = draw_omega(plan, n_grid);
  if (omega.empty()) throw Error(ErrorCode::MOutOfRange, "Bernoulli sampling selected no rows");
  return omega;
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

Outcome cmd_coherence(const Json& config) {
  const BasisSpec sa = basis_from_json(config.at("basis_a"), "basis_a");
  const BasisSpec sb = basis_from_json(config.at("basis_b"), "basis_b");
  const Json& sec = config.at("coherence");
  const std::size_t n1 = sec.at("n1").is_null() ? sa.order : sec.at("n1").get<std::size_t>();
  const std::size_t n2 = sec.at("n2").is_null() ? sb.order : sec.at("n2").get<std::size_t>();
  const auto a = sa.build();
  const auto b = sb.build();
  const BasisCoherence bc = mutual_coherence(*a, *b, n1, n2);
  const auto n = config.at("n_grid").get<std::size_t>();
  const MatrixCoherence mc = matrix_coherences(assemble(a, b, n1, n2, grid(n)));
  Outcome o;
  o.body = Json{{"mu", bc.mu},
                {"argmax", Json::array({bc.argmax.first, bc.argmax.second})},
                {"tail_error", bc.tail_error},
                {"truncation_a", bc.truncation_a},
                {"truncation_b", bc.truncation_b},
                {"n1", n1},
                {"n2", n2},
                {"matrix",
                 {{"n_grid", n},
                  {"mu_matrix", mc.mu_matrix},
                  {"mu_m", mc.mu_m},
                  {"mu_phi", mc.mu_phi},
                  {"mu_psi", mc.mu_psi}}}};
  return o;
}

Outcome cmd_orthotest(const Json& config) {
  const DictionaryMatrix dict = dictionary_from(config);
  const OrthonormalityReport rep = orthonormality_report(dict);
  Outcome o;
  o.body = Json{{"n_grid", dict.rows()},     {"n1", dict.n1()},
                {"n2", dict.n2()},           {"dev1", rep.dev1},
                {"dev2", rep.dev2},          {"cross_dev", rep.cross_dev},
                {"impulse_error", rep.impulse_error}};
  if (config.at("orthotest").at("write_dictionary").get<bool>()) {
    std::ostringstream csv;
    write_dictionary_csv(dict, csv);
    o.artifacts.push_back({"dictionary.csv", csv.str()});
  }
  return o;
}

struct Measurements {
  std::vector<std::size_t> omega;
  Eigen::VectorXcd h;
};

Measurements read_measurements(const std::string& path, std::size_t n_grid) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigError, "cannot open measurement file '" + path + "'");
  Measurements m;
  std::vector<cdouble> vals;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    double r = 0.0, re = 0.0, im = 0.0;
    if (!(ls >> r >> re >> im)) {
      if (line_no == 1) continue;  // header
      throw Error(ErrorCode::ConfigError, path + ":" + std::to_string(line_no) +
                                              ": expected r,re,im");
    }
    if (r != std::floor(r) || r < 1.0 || r > static_cast<double>(n_grid)) {
      throw Error(ErrorCode::ShapeMismatch, path + ":" + std::to_string(line_no) +
                                                ": row index must be an integer in [1, " +
                                                std::to_string(n_grid) + "]");
    }
    m.omega.push_back(static_cast<std::size_t>(r) - 1);
    vals.emplace_back(re, im);
  }
  if (vals.empty()) throw Error(ErrorCode::MOutOfRange, "measurement file has no rows");
  m.h = Eigen::Map<Eigen::VectorXcd>(vals.data(), static_cast<Eigen::Index>(vals.size()));
  return m;
}

Outcome cmd_reconstruct(const Json& config) {
  const DictionaryMatrix dict = dictionary_from(config);
  const Json& sec = config.at("reconstruct");
  const BpOptions opts = solver_from_json(config.at("solver"));
  Measurements meas;
  std::optional<Eigen::VectorXd> planted;
  if (!sec.at("measurements").is_null()) {
    meas = read_measurements(sec.at("measurements").get<std::string>(), dict.rows());
  } else {
    const Json& plant = sec.at("plant");
    const auto support =
        indices_from_json(plant.at("support"), dict.columns(), "reconstruct.plant.support");
    const Json& values = plant.at("values");
    if (support.empty()) {
      throw Error(ErrorCode::ConfigError,
                  "reconstruct needs either measurements or a planted support");
    }
    if (!values.is_array() || values.size() != support.size()) {
      throw Error(ErrorCode::ConfigError,
                  "reconstruct.plant.values must have one number per support index");
    }
    Eigen::VectorXd theta = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dict.columns()));
    for (std::size_t i = 0; i < support.size(); ++i) {
      theta(static_cast<Eigen::Index>(support[i])) = values[i].get<double>();
    }
    meas.omega = choose_rows(sec, config, dict.rows(), "reconstruct");
    meas.h = measure(dict, theta, meas.omega);
    planted = theta;
  }
  const RecoveryResult res = basis_pursuit(dict.restrict_rows(meas.omega), meas.h, opts);
  Outcome o;
  o.body = Json{{"status", std::string(to_string(res.status))},
                {"method", std::string(to_string(res.method))},
                {"iterations", res.iterations},
                {"polished", res.polished},
                {"constraint_rank", res.constraint_rank},
                {"objective", res.objective},
                {"residual", res.residual},
                {"m", meas.omega.size()},
                {"omega", one_based(meas.omega)},
                {"support", one_based(support_of(res.theta_hat, 1e-6))},
                {"theta_hat", vector_json(res.theta_hat)}};
  if (planted) {
    const double err = (res.theta_hat - *planted).norm() / std::max(planted->norm(), 1e-300);
    o.body["planted"] = vector_json(*planted);
    o.body["relative_error"] = err;
    o.body["exact"] = err <= 1e-6;
  }
  o.run["wall_time"] = res.wall_time;
  if (res.status != SolverStatus::Optimal) o.exit_code = kExitSolver;
  return o;
}

Outcome cmd_certify(const Json& config) {
  const DictionaryMatrix dict = dictionary_from(config);
  const Json& sec = config.at("certify");
  const std::vector<std::size_t> omega = choose_rows(sec, config, dict.rows(), "certify");
  const std::vector<std::size_t> t =
      indices_from_json(sec.at("support"), dict.columns(), "certify.support");
  std::vector<double> tau;
  if (sec.at("signs").is_null()) {
    Rng rng(derive_seed(config.at("seed").get<std::uint64_t>(), {0x7369676eULL}));
    for (std::size_t i = 0; i < t.size(); ++i) tau.push_back(rng.sign());
  } else {
    for (const Json& s : sec.at("signs")) tau.push_back(s.get<double>());
  }
  const CertificateReport rep = dual_certificate(dict, omega, t, tau);
  Outcome o;
  o.body = Json{{"status", std::string(to_string(rep.status))},
                {"m", omega.size()},
                {"omega", one_based(omega)},
                {"support", one_based(t)},
                {"signs", tau},
                {"cond_row_space", rep.cond_row_space},
                {"cond_sign_match", rep.cond_sign_match},
                {"cond_strict", rep.cond_strict},
                {"certified", rep.all_hold()},
                {"off_support_max", rep.off_support_max},
                {"margin", 1.0 - rep.off_support_max},
                {"sign_match_error", rep.sign_match_error},
                {"row_space_residual", rep.row_space_residual},
                {"gram_min_eig", rep.gram_min_eig},
                {"gram_max_eig", rep.gram_max_eig},
                {"pi", vector_json(rep.pi)}};
  if (rep.status == CertificateStatus::SingularGram) o.exit_code = kExitSolver;
  return o;
}

Outcome cmd_bound(const Json& config) {
  const DictionaryMatrix dict = dictionary_from(config);
  const Json& sec = config.at("bound");
  const auto t1 = indices_from_json(sec.at("t1"), dict.n1(), "bound.t1");
  const auto t2 = indices_from_json(sec.at("t2"), dict.n2(), "bound.t2");
  const BoundReport rep =
      measurement_bound(dict, t1, t2, sec.at("delta").get<double>(), sec.at("c").get<double>());
  Outcome o;
  o.body = Json{{"t1", one_based(rep.t1)},
                {"t2", one_based(rep.t2)},
                {"mu_matrix", rep.mu_matrix},
                {"mu_m", rep.mu_m},
                {"cross_norm", rep.cross_norm},
                {"delta", rep.delta},
                {"c", rep.c},
                {"bracket", rep.bracket},
                {"c_f_term", rep.c_f_term ? Json(*rep.c_f_term) : Json(nullptr)},
                {"m_min", rep.m_min ? Json(*rep.m_min) : Json(nullptr)},
                {"feasible", rep.feasible},
                {"success_probability", rep.success_probability},
                {"message", rep.message}};
  return o;
}

Outcome cmd_phase(const Json& config) {
  const ExperimentConfig cfg = phase_config_from_json(config);
  const std::vector<PhaseCell> cells = phase_diagram(cfg);
  Outcome o;
  std::ostringstream csv;
  write_phase_csv(cells, csv);
  o.artifacts.push_back({"phase.csv", csv.str()});
  Json rows = Json::array();
  Json times = Json::array();
  for (const PhaseCell& c : cells) {
    Json failures = Json::object();
    for (std::size_t k = 1; k < kTrialOutcomeCount; ++k) {
      failures[std::string(to_string(static_cast<TrialOutcome>(k)))] = c.outcomes[k];
    }
    rows.push_back(Json{{"m", c.m},
                        {"t_size", c.t_size},
                        {"successes", c.successes},
                        {"trials", c.trials},
                        {"success_rate", c.success_rate},
                        {"failures", failures}});
    times.push_back(Json{{"m", c.m}, {"t_size", c.t_size}, {"mean_solver_time", c.mean_solver_time}});
  }
  o.body = Json{{"cells", rows}};
  o.run["cells"] = times;
  return o;
}

Outcome cmd_concentration(const Json& config) {
  const DictionaryMatrix dict = dictionary_from(config);
  const Json& sec = config.at("concentration");
  const auto t1 = indices_from_json(sec.at("t1"), dict.n1(), "concentration.t1");
  const auto t2 = indices_from_json(sec.at("t2"), dict.n2(), "concentration.t2");
  const ConcentrationResult r = concentration_check(
      dict, t1, t2, sec.at("m").get<std::size_t>(), sec.at("trials").get<std::size_t>(),
      config.at("seed").get<std::uint64_t>(), config.at("threads").get<unsigned>(),
      sec.at("delta").get<double>());
  Outcome o;
  std::ostringstream csv;
  write_concentration_csv(r, csv);
  o.artifacts.push_back({"concentration.csv", csv.str()});
  o.body = Json{{"m", r.m},
                {"t_size", r.t_size},
                {"trials", r.trials},
                {"emp_prob_half_dev", r.emp_prob_half_dev},
                {"emp_prob_i_dev", r.emp_prob_i_dev},
                {"f_norm", r.f_norm},
                {"cross_norm", r.cross_norm},
                {"mean_dev", r.mean_dev},
                {"max_dev", r.max_dev},
                {"mean_rows", r.mean_rows},
                {"energy_lower", r.energy_lower},
                {"energy_upper", r.energy_upper},
                {"threshold_m", r.threshold_m},
                {"delta", r.delta}};
  return o;
}

Outcome cmd_uncertainty(const Json& config) {
  const UncertaintyConfig cfg = uncertainty_config_from_json(config);
  const UncertaintyResult r = uncertainty_sweep(cfg);
  Outcome o;
  std::ostringstream csv;
  write_uncertainty_csv(r, csv);
  o.artifacts.push_back({"uncertainty.csv", csv.str()});
  Json rows = Json::array();
  for (const UncertaintyRow& row : r.rows) {
    rows.push_back(Json{{"epsilon", row.epsilon},
                        {"instances", row.instances},
                        {"violations", row.violations},
                        {"tight", row.tight},
                        {"min_margin", number_or_null(row.min_margin)}});
  }
  o.body = Json{{"mu", r.mu},
                {"mu_tail_error", r.mu_tail_error},
                {"mu_used", r.mu_used},
                {"violations", r.violations},
                {"rows", rows}};
  if (r.violations > 0) o.exit_code = kExitSolver;
  return o;
}

using Handler = Outcome (*)(const Json&);

struct Command {
  const char* name;
  const char* help;
  Handler handler;
};

constexpr Command kCommands[] = {
    {"coherence", "mutual coherence of the two bases", cmd_coherence},
    {"orthotest", "orthonormality of the sampled dictionary", cmd_orthotest},
    {"reconstruct", "basis pursuit from measurements or a planted vector", cmd_reconstruct},
    {"certify", "dual certificate for a support and sign pattern", cmd_certify},
    {"bound", "measurement-count bound for a support", cmd_bound},
    {"phase", "Monte-Carlo recovery phase diagram", cmd_phase},
    {"concentration", "Monte-Carlo Gram concentration check", cmd_concentration},
    {"uncertainty", "uncertainty inequality sweep over random sparse functions", cmd_uncertainty},
};

void emit(const std::string& name, const Json& config, const Outcome& outcome,
          const Options& opt, double wall_time) {
  const std::filesystem::path dir(opt.out_dir);
  std::filesystem::create_directories(dir);
  Json names = Json::array();
  for (const Artifact& a : outcome.artifacts) {
    write_atomic(dir / a.name, a.content);
    names.push_back(a.name);
  }
  const std::string body_name = name + ".json";
  write_atomic(dir / body_name, outcome.body.dump(2) + "\n");
  names.push_back(body_name);

  Json run = outcome.run;
  run["wall_time"] = wall_time;
  run["isa"] = std::string(kernels::to_string(kernels::active()));
  const Json manifest{{"tool", "orfcs"},
                      {"version", version()},
                      {"config_schema", kConfigSchema},
                      {"subcommand", name},
                      {"created_utc", utc_timestamp()},
                      {"seed", config.at("seed")},
                      {"exit_code", outcome.exit_code},
                      {"artifacts", names},
                      {"config", config},
                      {"run", run}};
  write_atomic(dir / "manifest.json", manifest.dump(2) + "\n");
}

int execute(const Command& cmd, const Options& opt, std::ostream& out, std::ostream& err) {
  try {
    std::vector<std::string> overrides = opt.overrides;
    if (opt.threads >= 0) overrides.push_back("threads=" + std::to_string(opt.threads));
    const Json config = resolve_config(opt.config_path, overrides);
    if (opt.verbose) err << "orfcs " << cmd.name << ": resolved configuration\n" << config.dump(2) << '\n';
    const auto start = std::chrono::steady_clock::now();
    const Outcome outcome = cmd.handler(config);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!opt.out_dir.empty()) emit(cmd.name, config, outcome, opt, wall);
    if (!opt.quiet) out << outcome.body.dump(2) << '\n';
    if (opt.verbose) err << "orfcs " << cmd.name << ": finished in " << wall << " s\n";
    if (outcome.exit_code == kExitSolver) {
      err << "orfcs " << cmd.name << ": computation did not succeed (see status fields)\n";
    }
    return outcome.exit_code;
  } catch (const Error& e) {
    err << "orfcs " << cmd.name << ": " << to_string(e.code()) << ": " << e.what() << '\n';
    return kExitValidation;
  } catch (const nlohmann::json::exception& e) {
    err << "orfcs " << cmd.name << ": ConfigError: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "orfcs " << cmd.name << ": " << e.what() << '\n';
    return kExitSolver;
  }
}

}  // namespace

std::string version() { return ORFCS_VERSION; }

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sparse recovery in concatenated orthonormal rational function bases", "orfcs"};
  app.set_version_flag("--version", "orfcs " + version() + " (config schema " +
                                        std::to_string(kConfigSchema) + ")");
  app.require_subcommand(1, 1);

  Options opt;
  std::map<std::string, const Command*> by_name;
  std::vector<CLI::App*> subs;
  for (const Command& cmd : kCommands) {
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
    sub->add_option("-c,--config", opt.config_path, "JSON configuration file");
    sub->add_option("-s,--set", opt.overrides, "override as dotted.key=value (repeatable)");
    sub->add_option("-o,--out", opt.out_dir, "directory for result files and manifest");
    sub->add_option("-j,--threads", opt.threads, "worker threads (0 = all cores)")
        ->check(CLI::NonNegativeNumber);
    sub->add_flag("-q,--quiet", opt.quiet, "do not print the result JSON");
    sub->add_flag("-v,--verbose", opt.verbose, "log progress to stderr");
    by_name[cmd.name] = &cmd;
    subs.push_back(sub);
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();  // program name
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }
  for (CLI::App* sub : subs) {
    if (sub->parsed()) return execute(*by_name.at(sub->get_name()), opt, out, err);
  }
  return kExitValidation;
}

}  // namespace orfcs::cli
