// Copyright 2026 The orfcs Authors
// SPDX-License-Identifier: Apache-2.0

#include "orfcs/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <ostream>
#include <string>
#include <thread>

#include "orfcs/error.hpp"
#include "orfcs/hardy_space.hpp"
#include "orfcs/rng.hpp"
#include "orfcs/sparsity.hpp"

namespace orfcs {

namespace {

// Runs body(i) for i in [0, count) on up to `threads` workers. Results are
// written by index, so the outcome does not depend on scheduling.
template <typename Body>
void parallel_for(std::size_t count, unsigned threads, Body body) {
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (std::size_t i = next++; i < count && !failed; i = next++) {
        try {
          body(i);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::shared_ptr<const OrfBasis> BasisSpec::build() const {
  PoleSequence seq;
  seq.poles = poles;
  seq.real_coefficients = real_coefficients;
  return std::make_shared<const OrfBasis>(kind, seq, order);
}

DictionaryMatrix build_dictionary(const BasisSpec& a, const BasisSpec& b, std::size_t n_grid) {
  return assemble(a.build(), b.order > 0 ? b.build() : nullptr, a.order, b.order,
                  grid(n_grid));
}

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

void ExperimentConfig::validate() const {
  const std::size_t cols = basis_a.order + basis_b.order;
  if (trials == 0) throw Error(ErrorCode::ConfigError, "trials must be at least 1");
  if (n_grid == 0) throw Error(ErrorCode::ConfigError, "n_grid must be at least 1");
  if (m_values.empty() || t_sizes.empty()) {
    throw Error(ErrorCode::ConfigError, "phase grids over m and |T| must be non-empty");
  }
  for (std::size_t m : m_values) {
    if (m < 1 || m > n_grid) {
      throw Error(ErrorCode::MOutOfRange, "m = " + std::to_string(m) +
                                              " must satisfy 1 <= m <= N = " +
                                              std::to_string(n_grid));
    }
  }
  for (std::size_t t : t_sizes) {
    if (t < 1 || t > cols) {
      throw Error(ErrorCode::ConfigError, "|T| = " + std::to_string(t) +
                                              " must lie in [1, n1+n2 = " +
                                              std::to_string(cols) + "]");
    }
  }
}

std::string_view to_string(TrialOutcome outcome) {
  switch (outcome) {
    case TrialOutcome::Success:
      return "success";
    case TrialOutcome::Infeasible:
      return "infeasible";
    case TrialOutcome::WrongSupport:
      return "wrong_support";
    case TrialOutcome::Tolerance:
      return "tolerance";
    case TrialOutcome::SolverFailure:
      return "solver_failure";
    case TrialOutcome::NoRows:
      return "no_rows";
  }
  return "unknown";
}

PlantedInstance plant_instance(const ExperimentConfig& config, std::size_t columns,
                               std::size_t m, std::size_t t_size, std::size_t trial) {
  Rng rng(derive_seed(config.seed, {m, t_size, trial}));
  PlantedInstance inst;
  // Uniform t_size-subset of all columns, so the split between the two
  // halves is itself random.
  std::vector<std::size_t> idx(columns);
  for (std::size_t i = 0; i < columns; ++i) idx[i] = i;
  for (std::size_t i = 0; i < t_size; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(columns - i));
    std::swap(idx[i], idx[j]);
  }
  inst.support.assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(t_size));
  std::sort(inst.support.begin(), inst.support.end());
  inst.theta = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(columns));
  for (std::size_t k : inst.support) {
    const double sign = rng.sign();
    inst.theta(static_cast<Eigen::Index>(k)) = sign * rng.uniform(0.5, 1.5);
  }
  MeasurementPlan plan;
  plan.model = config.sampling;
  plan.m = m;
  plan.seed = rng.next_u64();
  inst.omega = draw_omega(plan, config.n_grid);
  return inst;
}

TrialOutcome classify(const RecoveryResult& result, const PlantedInstance& planted,
                      double success_tol) {
  if (result.status == SolverStatus::Infeasible) return TrialOutcome::Infeasible;
  const double err = (result.theta_hat - planted.theta).norm() / planted.theta.norm();
  if (err <= success_tol) return TrialOutcome::Success;
  if (result.status != SolverStatus::Optimal) return TrialOutcome::SolverFailure;
  if (support_of(result.theta_hat, 1e-6) != planted.support) return TrialOutcome::WrongSupport;
  return TrialOutcome::Tolerance;
}

std::vector<PhaseCell> phase_diagram(const ExperimentConfig& config) {
  config.validate();
  const DictionaryMatrix dict = build_dictionary(config.basis_a, config.basis_b, config.n_grid);
  const std::size_t cells = config.m_values.size() * config.t_sizes.size();
  const std::size_t total = cells * config.trials;

  struct TrialRecord {
    TrialOutcome outcome = TrialOutcome::SolverFailure;
    double time = 0.0;
  };
  std::vector<TrialRecord> records(total);
  parallel_for(total, config.threads, [&](std::size_t i) {
    const std::size_t cell = i / config.trials;
    const std::size_t trial = i % config.trials;
    const std::size_t t_size = config.t_sizes[cell / config.m_values.size()];
    const std::size_t m = config.m_values[cell % config.m_values.size()];
    const PlantedInstance inst = plant_instance(config, dict.columns(), m, t_size, trial);
    TrialRecord& rec = records[i];
    if (inst.omega.empty()) {
      rec.outcome = TrialOutcome::NoRows;
      return;
    }
    const Eigen::MatrixXcd a = dict.restrict_rows(inst.omega);
    const Eigen::VectorXcd h = a * inst.theta.cast<cdouble>();
    try {
      const RecoveryResult res = basis_pursuit(a, h, config.solver);
      rec.outcome = classify(res, inst, config.success_tol);
      rec.time = res.wall_time;
    } catch (const Error&) {
      rec.outcome = TrialOutcome::SolverFailure;
    }
  });

  std::vector<PhaseCell> out(cells);
  for (std::size_t cell = 0; cell < cells; ++cell) {
    PhaseCell& c = out[cell];
    c.t_size = config.t_sizes[cell / config.m_values.size()];
    c.m = config.m_values[cell % config.m_values.size()];
    c.trials = config.trials;
    double time = 0.0;
    for (std::size_t t = 0; t < config.trials; ++t) {
      const TrialRecord& rec = records[cell * config.trials + t];
      ++c.outcomes[static_cast<std::size_t>(rec.outcome)];
      time += rec.time;
    }
    c.successes = c.outcomes[static_cast<std::size_t>(TrialOutcome::Success)];
    c.success_rate = static_cast<double>(c.successes) / static_cast<double>(c.trials);
    c.mean_solver_time = time / static_cast<double>(c.trials);
  }
  return out;
}

void write_phase_csv(const std::vector<PhaseCell>& cells, std::ostream& os) {
  os << "m,t_size,successes,trials,success_rate";
  for (std::size_t k = 1; k < kTrialOutcomeCount; ++k) {
    os << ',' << to_string(static_cast<TrialOutcome>(k));
  }
  os << '\n';
  for (const PhaseCell& c : cells) {
    os << c.m << ',' << c.t_size << ',' << c.successes << ',' << c.trials << ','
       << fmt_double(c.success_rate);
    for (std::size_t k = 1; k < kTrialOutcomeCount; ++k) os << ',' << c.outcomes[k];
    os << '\n';
  }
}

ConcentrationResult concentration_check(const DictionaryMatrix& dict,
                                        std::span<const std::size_t> t1,
                                        std::span<const std::size_t> t2, std::size_t m,
                                        std::size_t trials, std::uint64_t seed,
                                        unsigned threads, double delta) {
  const std::size_t n = dict.rows();
  if (m < 1 || m > n) {
    throw Error(ErrorCode::MOutOfRange, "m = " + std::to_string(m) +
                                            " must satisfy 1 <= m <= N = " + std::to_string(n));
  }
  if (trials == 0) throw Error(ErrorCode::InvalidArgument, "trials must be at least 1");
  std::vector<std::size_t> cols;
  for (std::size_t i : t1) {
    if (i >= dict.n1()) throw Error(ErrorCode::ShapeMismatch, "T1 index outside Phi");
    cols.push_back(i);
  }
  for (std::size_t j : t2) {
    if (j >= dict.n2()) throw Error(ErrorCode::ShapeMismatch, "T2 index outside Psi");
    cols.push_back(dict.n1() + j);
  }
  const auto ts = static_cast<Eigen::Index>(cols.size());
  if (ts == 0) throw Error(ErrorCode::InvalidArgument, "support must be non-empty");

  Eigen::MatrixXcd at(static_cast<Eigen::Index>(n), ts);
  for (Eigen::Index j = 0; j < ts; ++j) {
    at.col(j) = dict.values().col(static_cast<Eigen::Index>(cols[static_cast<std::size_t>(j)]));
  }
  const auto n1t = static_cast<Eigen::Index>(t1.size());
  const auto n2t = static_cast<Eigen::Index>(t2.size());
  Eigen::MatrixXcd f = Eigen::MatrixXcd::Identity(ts, ts);
  if (n1t > 0 && n2t > 0) {
    const Eigen::MatrixXcd x =
        at.leftCols(n1t).adjoint() * at.rightCols(n2t) / static_cast<double>(n);
    f.topRightCorner(n1t, n2t) = x;
    f.bottomLeftCorner(n2t, n1t) = x.adjoint();
  }

  ConcentrationResult res;
  res.trials = trials;
  res.m = m;
  res.t_size = cols.size();
  res.delta = delta;
  res.cross_norm = n1t > 0 && n2t > 0 ? cross_block_norm(dict, t1, t2) : 0.0;
  res.f_norm = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(f, Eigen::EigenvaluesOnly)
                   .eigenvalues()
                   .cwiseAbs()
                   .maxCoeff();
  res.energy_lower = 0.5 - res.cross_norm;
  res.energy_upper = 1.5 + res.cross_norm;
  res.threshold_m = gram_concentration_threshold(cols.size(), matrix_coherences(dict).mu_m,
                                                 res.f_norm, delta);

  struct Sample {
    double dev_f = 0.0;
    double dev_i = 0.0;
    std::size_t rows = 0;
  };
  std::vector<Sample> samples(trials);
  const double p = static_cast<double>(m) / static_cast<double>(n);
  const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(ts, ts);
  parallel_for(trials, threads, [&](std::size_t trial) {
    Rng rng(derive_seed(seed, {m, cols.size(), trial}));
    Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(ts, ts);
    std::size_t rows = 0;
    for (std::size_t r = 0; r < n; ++r) {
      if (rng.uniform() < p) {
        const auto row = at.row(static_cast<Eigen::Index>(r));
        g.noalias() += row.adjoint() * row;
        ++rows;
      }
    }
    g /= static_cast<double>(m);
    Sample& s = samples[trial];
    s.rows = rows;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> e1(g - f, Eigen::EigenvaluesOnly);
    s.dev_f = e1.eigenvalues().cwiseAbs().maxCoeff();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> e2(g - eye, Eigen::EigenvaluesOnly);
    s.dev_i = e2.eigenvalues().cwiseAbs().maxCoeff();
  });

  std::size_t over_f = 0;
  std::size_t over_i = 0;
  double sum_dev = 0.0;
  double sum_rows = 0.0;
  for (const Sample& s : samples) {
    if (s.dev_f > 0.5) ++over_f;
    if (s.dev_i > 0.5 + res.cross_norm) ++over_i;
    sum_dev += s.dev_f;
    sum_rows += static_cast<double>(s.rows);
    res.max_dev = std::max(res.max_dev, s.dev_f);
  }
  const auto tr = static_cast<double>(trials);
  res.emp_prob_half_dev = static_cast<double>(over_f) / tr;
  res.emp_prob_i_dev = static_cast<double>(over_i) / tr;
  res.mean_dev = sum_dev / tr;
  res.mean_rows = sum_rows / tr;
  return res;
}

void write_concentration_csv(const ConcentrationResult& r, std::ostream& os) {
  os << "m,t_size,trials,emp_prob_half_dev,emp_prob_i_dev,f_norm,cross_norm,mean_dev,"
        "max_dev,mean_rows,energy_lower,energy_upper,threshold_m\n";
  os << r.m << ',' << r.t_size << ',' << r.trials << ',' << fmt_double(r.emp_prob_half_dev)
     << ',' << fmt_double(r.emp_prob_i_dev) << ',' << fmt_double(r.f_norm) << ','
     << fmt_double(r.cross_norm) << ',' << fmt_double(r.mean_dev) << ','
     << fmt_double(r.max_dev) << ',' << fmt_double(r.mean_rows) << ','
     << fmt_double(r.energy_lower) << ',' << fmt_double(r.energy_upper) << ','
     << fmt_double(r.threshold_m) << '\n';
}

UncertaintyResult uncertainty_sweep(const UncertaintyConfig& config) {
  if (config.window_a == 0 || config.window_a > config.basis_a.order) {
    throw Error(ErrorCode::ConfigError, "window_a must lie in [1, basis_a.order]");
  }
  if (config.max_sparsity == 0 || config.max_sparsity > config.window_a) {
    throw Error(ErrorCode::ConfigError, "max_sparsity must lie in [1, window_a]");
  }
  if (config.epsilons.empty()) throw Error(ErrorCode::ConfigError, "no epsilon values given");
  for (double eps : config.epsilons) {
    if (!(eps >= 0.0)) throw Error(ErrorCode::ConfigError, "epsilon must be >= 0");
  }

  const auto a = config.basis_a.build();
  const auto b = config.basis_b.build();
  const OrfBasis wa(a->kind(), a->poles(), config.window_a);
  const ImpulseTable ta = wa.impulse_response_auto();
  const ImpulseTable tb = b->impulse_response_auto();
  const ImpulseGram gram = impulse_gram(ta, tb);  // (k, l) = <phi_k, psi_l>
  const BasisCoherence coh = mutual_coherence(ta, tb);

  // Per-entry error of <phi_k, psi_l>.
  Eigen::MatrixXd err(gram.values.rows(), gram.values.cols());
  for (std::size_t k = 0; k < ta.size(); ++k) {
    for (std::size_t l = 0; l < tb.size(); ++l) {
      err(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)) =
          inner_product_impulse(ta.column(k), tb.column(l)).error_bound;
    }
  }

  UncertaintyResult res;
  res.mu = coh.mu;
  res.mu_tail_error = coh.tail_error;
  res.mu_used = coh.mu - coh.tail_error;
  if (!(res.mu_used > 0.0)) {
    throw Error(ErrorCode::NonpositiveMu, "coherence is not resolved above its error bound");
  }
  res.rows.resize(config.epsilons.size());
  for (std::size_t e = 0; e < config.epsilons.size(); ++e) {
    res.rows[e].epsilon = config.epsilons[e];
    res.rows[e].min_margin = std::numeric_limits<double>::infinity();
  }

  const std::size_t na = config.window_a;
  const std::size_t nb = tb.size();
  for (std::size_t inst = 0; inst < config.instances; ++inst) {
    Rng rng(derive_seed(config.seed, {inst}));
    const std::size_t s = 1 + static_cast<std::size_t>(rng.below(config.max_sparsity));
    std::vector<std::size_t> idx(na);
    for (std::size_t i = 0; i < na; ++i) idx[i] = i;
    for (std::size_t i = 0; i < s; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng.below(na - i));
      std::swap(idx[i], idx[j]);
    }
    Eigen::VectorXd alpha = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(na));
    for (std::size_t i = 0; i < s; ++i) {
      const double sign = rng.sign();
      alpha(static_cast<Eigen::Index>(idx[i])) = sign * rng.uniform(0.5, 1.5);
    }

    // beta_l = <H, psi_l>; shrink each magnitude by its certified error so
    // every stored value is a lower bound on the exact one.
    const Eigen::VectorXcd beta = gram.values.transpose() * alpha.cast<cdouble>();
    const Eigen::VectorXd beta_err = err.transpose() * alpha.cwiseAbs();
    std::vector<double> beta_low(nb);
    for (std::size_t l = 0; l < nb; ++l) {
      beta_low[l] = std::max(0.0, std::abs(beta(static_cast<Eigen::Index>(l))) -
                                      beta_err(static_cast<Eigen::Index>(l)));
    }
    std::vector<double> alpha_mag(na);
    for (std::size_t k = 0; k < na; ++k) alpha_mag[k] = std::abs(alpha(static_cast<Eigen::Index>(k)));

    for (std::size_t e = 0; e < config.epsilons.size(); ++e) {
      const double eps = config.epsilons[e];
      const std::size_t na0 = summarize_magnitudes(alpha_mag, 0.0, eps).eps_zero_norm;
      const std::size_t nb0 = summarize_magnitudes(beta_low, 0.0, eps).eps_zero_norm;
      const UncertaintyCheck chk = check_uncertainty(na0, nb0, res.mu_used, eps);
      UncertaintyRow& row = res.rows[e];
      ++row.instances;
      if (!chk.holds) ++row.violations;
      if (std::abs(chk.lhs - chk.rhs) <= kBoundTolerance) ++row.tight;
      row.min_margin = std::min(row.min_margin, chk.lhs - chk.rhs);
    }
  }
  for (const UncertaintyRow& row : res.rows) res.violations += row.violations;
  return res;
}

void write_uncertainty_csv(const UncertaintyResult& r, std::ostream& os) {
  os << "epsilon,instances,violations,tight,min_margin,mu,mu_used\n";
  for (const UncertaintyRow& row : r.rows) {
    os << fmt_double(row.epsilon) << ',' << row.instances << ',' << row.violations << ','
       << row.tight << ',' << fmt_double(row.min_margin) << ',' << fmt_double(r.mu) << ','
       << fmt_double(r.mu_used) << '\n';
  }
}

}  // namespace orfcs
