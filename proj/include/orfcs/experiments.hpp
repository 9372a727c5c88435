// Copyright 2026 The orfcs Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ORFCS_EXPERIMENTS_HPP_
#define ORFCS_EXPERIMENTS_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "orfcs/rational_basis.hpp"
#include "orfcs/recovery.hpp"
#include "orfcs/sampling.hpp"

namespace orfcs {

struct BasisSpec {
  BasisKind kind = BasisKind::Fir;
  std::vector<cdouble> poles;
  std::size_t order = 8;
  bool real_coefficients = true;

  std::shared_ptr<const OrfBasis> build() const;
};

/// Dictionary [Phi Psi] on the N-point grid from two basis specs.
DictionaryMatrix build_dictionary(const BasisSpec& a, const BasisSpec& b, std::size_t n_grid);

/// Worker count: `requested` if non-zero, else the hardware concurrency.
unsigned resolve_threads(unsigned requested);

// ---------------------------------------------------------------------------
// Phase diagram
// ---------------------------------------------------------------------------

struct ExperimentConfig {
  BasisSpec basis_a;
  BasisSpec basis_b{BasisKind::Laguerre, {cdouble{0.9, 0.0}}, 8, true};
  std::size_t n_grid = 64;
  std::vector<std::size_t> m_values{4, 8, 16, 32};
  std::vector<std::size_t> t_sizes{2};
  std::size_t trials = 200;
  std::uint64_t seed = 1;
  BpOptions solver;
  SamplingModel sampling = SamplingModel::UniformSubset;
  double success_tol = 1e-6;
  unsigned threads = 0;

  /// Throws ConfigError on an empty grid, trials == 0, m outside [1, N] or
  /// |T| outside [1, n1+n2].
  void validate() const;
};

enum class TrialOutcome { Success, Infeasible, WrongSupport, Tolerance, SolverFailure, NoRows };
inline constexpr std::size_t kTrialOutcomeCount = 6;

std::string_view to_string(TrialOutcome outcome);

struct PhaseCell {
  std::size_t m = 0;
  std::size_t t_size = 0;
  std::size_t successes = 0;
  std::size_t trials = 0;
  double success_rate = 0.0;
  double mean_solver_time = 0.0;  // seconds; not part of the CSV body
  std::array<std::size_t, kTrialOutcomeCount> outcomes{};
};

struct PlantedInstance {
  std::vector<std::size_t> support;  // 0-based, ascending
  Eigen::VectorXd theta;
  std::vector<std::size_t> omega;
};

/// The planted coefficients and rows of trial `trial` in cell (m, t_size).
/// Magnitudes are uniform in [0.5, 1.5] with independent random signs.
PlantedInstance plant_instance(const ExperimentConfig& config, std::size_t columns,
                               std::size_t m, std::size_t t_size, std::size_t trial);

/// Classifies one basis pursuit run against the planted coefficients.
TrialOutcome classify(const RecoveryResult& result, const PlantedInstance& planted,
                      double success_tol);

/// Rows ordered by |T| then m as given in the config.
std::vector<PhaseCell> phase_diagram(const ExperimentConfig& config);

/// CSV with header m,t_size,successes,trials,success_rate,infeasible,
/// wrong_support,tolerance,solver_failure,no_rows.
void write_phase_csv(const std::vector<PhaseCell>& cells, std::ostream& os);

// ---------------------------------------------------------------------------
// Gram concentration
// ---------------------------------------------------------------------------

struct ConcentrationResult {
  std::size_t trials = 0;
  std::size_t m = 0;
  std::size_t t_size = 0;
  double emp_prob_half_dev = 0.0;  // P(||G/m - F|| > 1/2)
  double emp_prob_i_dev = 0.0;     // P(||G/m - I|| > 1/2 + cross_norm)
  double f_norm = 0.0;
  double cross_norm = 0.0;
  double mean_dev = 0.0;
  double max_dev = 0.0;
  double mean_rows = 0.0;
  /// Eigenvalues of G/m lie in [energy_lower, energy_upper] whenever the
  /// identity deviation stays below 1/2 + cross_norm.
  double energy_lower = 0.0;
  double energy_upper = 0.0;
  double threshold_m = 0.0;  // concentration threshold with unit constants
  double delta = 0.0;
};

/// Bernoulli row selection with p = m/N; G = A_T^* A_T over the selected
/// rows is compared with F = I + [0, X; X^*, 0], X = Phi_T1^* Psi_T2 / N.
ConcentrationResult concentration_check(const DictionaryMatrix& dict,
                                        std::span<const std::size_t> t1,
                                        std::span<const std::size_t> t2, std::size_t m,
                                        std::size_t trials, std::uint64_t seed,
                                        unsigned threads = 0, double delta = 0.1);

void write_concentration_csv(const ConcentrationResult& result, std::ostream& os);

// ---------------------------------------------------------------------------
// Uncertainty sweep
// ---------------------------------------------------------------------------

struct UncertaintyConfig {
  BasisSpec basis_a;
  BasisSpec basis_b{BasisKind::Laguerre, {cdouble{0.5, 0.0}}, 32, true};
  /// H is drawn sparse in the first window_a functions of basis_a; beta is
  /// evaluated on the first basis_b.order functions of basis_b.
  std::size_t window_a = 8;
  std::size_t max_sparsity = 3;
  std::size_t instances = 1000;
  std::vector<double> epsilons{1e-3, 1e-2, 1e-1};
  std::uint64_t seed = 1;
};

struct UncertaintyRow {
  double epsilon = 0.0;
  std::size_t instances = 0;
  std::size_t violations = 0;
  std::size_t tight = 0;  // lhs within 1e-9 of 2/mu
  double min_margin = 0.0;
};

struct UncertaintyResult {
  double mu = 0.0;
  double mu_tail_error = 0.0;
  double mu_used = 0.0;
  std::vector<UncertaintyRow> rows;
  std::size_t violations = 0;
};

/// For each instance H = sum alpha_k phi_k, computes beta_l = <H, psi_l>
/// through impulse responses and checks the uncertainty inequality at every
/// epsilon. Entries of beta within their certified error of zero are dropped
/// and the coherence is lowered by its error, so each check is a lower bound
/// on the exact left side against an upper bound on the exact right side.
UncertaintyResult uncertainty_sweep(const UncertaintyConfig& config);

void write_uncertainty_csv(const UncertaintyResult& result, std::ostream& os);

}  // namespace orfcs

#endif  // ORFCS_EXPERIMENTS_HPP_
