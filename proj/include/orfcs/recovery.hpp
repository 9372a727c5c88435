// Copyright 2026 The orfcs Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ORFCS_RECOVERY_HPP_
#define ORFCS_RECOVERY_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "orfcs/sampling.hpp"

namespace orfcs {

// ---------------------------------------------------------------------------
// Basis pursuit
//
//   min ||theta||_1  s.t.  A_Omega theta = H_Omega
//
// with real theta and complex data. Each complex equation is split into its
// real and imaginary rows, theta = theta+ - theta-, and the resulting
// standard-form LP is solved by a primal-dual interior point method. Dependent
// rows are removed first through an SVD of the stacked real system, which
// also decides consistency.
// ---------------------------------------------------------------------------

enum class SolverStatus { Optimal, MaxIters, Infeasible };
enum class SolverMethod { Auto, InteriorPoint, Admm };

std::string_view to_string(SolverStatus status);
std::string_view to_string(SolverMethod method);

struct BpOptions {
  double feas_tol = 1e-9;
  double opt_tol = 1e-9;
  int max_iters = 200;
  /// Auto runs the interior point method and falls back to ADMM when it
  /// stalls or breaks down.
  SolverMethod method = SolverMethod::Auto;
  int admm_max_iters = 50000;
  double admm_rho = 1.0;
  /// Re-solve least squares on the detected support and keep the result when
  /// it is feasible and no worse in objective.
  bool polish = true;
  /// Singular values below rank_tol * sigma_max are treated as zero.
  double rank_tol = 1e-11;
};

struct RecoveryResult {
  Eigen::VectorXd theta_hat;
  double objective = 0.0;  // ||theta_hat||_1
  double residual = 0.0;   // ||A theta_hat - H||_2
  SolverStatus status = SolverStatus::Optimal;
  SolverMethod method = SolverMethod::InteriorPoint;
  int iterations = 0;
  double wall_time = 0.0;  // seconds
  bool polished = false;
  std::size_t constraint_rank = 0;
};

/// Relative residual scale: feasibility means residual <= feas_tol *
/// max(1, ||H||).
RecoveryResult basis_pursuit(const Eigen::MatrixXcd& a_omega,
                             const Eigen::VectorXcd& h_omega,
                             const BpOptions& options = {});

/// Stacks real and imaginary parts: [Re A; Im A] and [Re h; Im h].
Eigen::MatrixXd stack_real(const Eigen::MatrixXcd& a);
Eigen::VectorXd stack_real(const Eigen::VectorXcd& h);

/// Indices (0-based) of entries with |theta_i| > threshold * max|theta|.
std::vector<std::size_t> support_of(const Eigen::VectorXd& theta,
                                    double threshold = 1e-7);

// ---------------------------------------------------------------------------
// Exhaustive l0 search, for toy problems only
// ---------------------------------------------------------------------------

struct L0Result {
  Eigen::VectorXd theta;
  std::vector<std::size_t> support;  // 0-based, ascending
};

inline constexpr std::size_t kL0MaxColumns = 16;
inline constexpr std::size_t kL0MaxSparsity = 3;

/// Smallest-cardinality theta whose least-squares fit on its support has
/// residual <= feas_tol * max(1, ||H||). Supports of equal size are tried in
/// lexicographic order; the minimum-norm fit is used on each. Returns nullopt
/// when nothing with at most s_max entries fits. Throws TooLarge beyond 16
/// columns or s_max > 3.
std::optional<L0Result> l0_bruteforce(const Eigen::MatrixXcd& a_omega,
                                      const Eigen::VectorXcd& h_omega,
                                      std::size_t s_max, double feas_tol = 1e-9);

// ---------------------------------------------------------------------------
// Dual certificate
// ---------------------------------------------------------------------------

enum class CertificateStatus { Ok, SingularGram };

std::string_view to_string(CertificateStatus status);

struct CertificateReport {
  CertificateStatus status = CertificateStatus::Ok;
  /// pi = A^T A_T (A_T^T A_T)^{-1} tau over the stacked real system.
  Eigen::VectorXd pi;
  bool cond_row_space = false;
  bool cond_sign_match = false;
  bool cond_strict = false;
  double off_support_max = 0.0;
  double sign_match_error = 0.0;
  double row_space_residual = 0.0;
  double gram_min_eig = 0.0;
  double gram_max_eig = 0.0;

  bool all_hold() const {
    return status == CertificateStatus::Ok && cond_row_space && cond_sign_match &&
           cond_strict;
  }
};

struct CertificateOptions {
  double sign_tol = 1e-8;
  double row_space_tol = 1e-8;
  /// The Gram matrix counts as singular when min_eig <= inv_tol * max_eig.
  double inv_tol = 1e-10;
};

/// Builds the least-squares dual vector for support `t` (0-based columns of
/// the dictionary) with signs `tau`, over the rows `omega`, and evaluates the
/// three conditions (row space, sign match on t, strictly below one off t).
CertificateReport dual_certificate(const DictionaryMatrix& dict,
                                   std::span<const std::size_t> omega,
                                   std::span<const std::size_t> t,
                                   std::span<const double> tau,
                                   const CertificateOptions& options = {});

/// Same on an explicit row-restricted matrix.
CertificateReport dual_certificate(const Eigen::MatrixXcd& a_omega,
                                   std::span<const std::size_t> t,
                                   std::span<const double> tau,
                                   const CertificateOptions& options = {});

// ---------------------------------------------------------------------------
// Measurement-count bound
// ---------------------------------------------------------------------------

/// C_F = 4 / [(1/2 + cross_norm) (2 log(2 n_total / delta))^{-1/2}
///            - mu sqrt(|T|)]^2,
/// or nullopt when the bracket is not positive.
std::optional<double> c_f_term(double cross_norm, double mu, std::size_t t_size,
                               std::size_t n_total, double delta);

/// C mu_M^2 max{|T|, log(n_total / delta), C_F}^2, or nullopt when C_F is.
std::optional<double> measurement_bound_value(double c, double mu_m, std::size_t t_size,
                                              std::size_t n_total, double delta,
                                              std::optional<double> c_f);

struct BoundReport {
  std::vector<std::size_t> t1;  // 0-based within Phi
  std::vector<std::size_t> t2;  // 0-based within Psi
  double mu_matrix = 0.0;
  double mu_m = 0.0;
  double cross_norm = 0.0;
  double delta = 0.0;
  double c = 1.0;
  double bracket = 0.0;  // denominator of C_F before squaring
  std::optional<double> c_f_term;
  std::optional<double> m_min;
  bool feasible = false;
  double success_probability = 0.0;  // 1 - 6 delta
  std::string message;
};

/// Evaluates the bound from the dictionary. Throws BadDelta unless
/// 0 < delta < 1, and InvalidArgument for C <= 0.
BoundReport measurement_bound(const DictionaryMatrix& dict,
                              std::span<const std::size_t> t1,
                              std::span<const std::size_t> t2, double delta,
                              double c = 1.0);

/// Measurement count above which the sampled Gram matrix on T concentrates
/// around F: |T| mu_M^2 max{4 C_R^2 (1 + 3||F||) log|T|, C_T log(3/delta)}.
double gram_concentration_threshold(std::size_t t_size, double mu_m, double f_norm,
                                    double delta, double c_r = 1.0, double c_t = 1.0);

/// sigma_bar^2 = m mu_M^2 max{2, |T| mu_M / sqrt(m)}.
double sigma_bar(double m, double mu_m, std::size_t t_size);

/// lambda = (1/2 + cross_norm)^{-1}
///          (mu sqrt(|T|) + a sigma_bar / m + sqrt(|T|) mu_M / sqrt(m)).
double off_support_lambda(double cross_norm, double mu, std::size_t t_size, double a,
                          double m, double mu_m);

}  // namespace orfcs

#endif  // ORFCS_RECOVERY_HPP_
