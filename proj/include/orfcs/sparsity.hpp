// Copyright 2026 The orfcs Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ORFCS_SPARSITY_HPP_
#define ORFCS_SPARSITY_HPP_

#include <cstddef>
#include <span>
#include <vector>

namespace orfcs {

/// Head of an l1 coefficient sequence. declared_tail bounds the l1 mass of
/// everything past the stored values (0 for exactly finite vectors).
struct CoefficientVector {
  std::vector<double> values;
  double declared_tail = 0.0;
};

/// Epsilon-support of a sequence. Indices are 1-based.
///   n_epsilon = min{K : sum_{k >= K} |alpha_k| <= epsilon}
///   support   = {k : alpha_k != 0, 1 <= k < n_epsilon}
struct SparsitySummary {
  double epsilon = 0.0;
  std::size_t n_epsilon = 1;
  std::vector<std::size_t> support;
  std::size_t eps_zero_norm = 0;
};

/// Throws TailDominates when epsilon <= declared_tail (the cut-off would lie
/// beyond the stored head), except for epsilon == declared_tail == 0.
SparsitySummary summarize(const CoefficientVector& alpha, double epsilon);

/// Same over magnitudes, for complex coefficient sequences.
SparsitySummary summarize_magnitudes(std::span<const double> magnitudes,
                                     double declared_tail, double epsilon);

/// (eps, s)-sparsity of a pair: ||theta1||_0(eps) + ||theta2||_0(eps) <= s,
/// with eps applied to each half separately.
bool is_pair_sparse(const CoefficientVector& theta1, const CoefficientVector& theta2,
                    double epsilon, std::size_t s);

/// lhs = (sqrt(n_a) + eps)^2 + (sqrt(n_b) + eps)^2 for two eps-0 norms.
double uncertainty_lhs(std::size_t norm_a, std::size_t norm_b, double epsilon);

inline constexpr double kBoundTolerance = 1e-9;

struct UncertaintyCheck {
  double lhs = 0.0;
  double rhs = 0.0;  // 2 / mu
  bool holds = false;
};

/// The two-basis uncertainty inequality lhs >= 2/mu (to kBoundTolerance).
/// Throws NonpositiveMu for mu <= 0.
UncertaintyCheck check_uncertainty(const CoefficientVector& alpha,
                                   const CoefficientVector& beta, double mu,
                                   double epsilon);
UncertaintyCheck check_uncertainty(std::size_t norm_a, std::size_t norm_b, double mu,
                                   double epsilon);

struct UniquenessCheck {
  double lhs = 0.0;
  double rhs = 0.0;  // 1 / mu
  bool unique_guaranteed = false;
};

/// Sufficient condition lhs < 1/mu for the pair representation to be unique.
UniquenessCheck check_uniqueness(const CoefficientVector& theta1,
                                 const CoefficientVector& theta2, double mu,
                                 double epsilon);
UniquenessCheck check_uniqueness(std::size_t norm_1, std::size_t norm_2, double mu,
                                 double epsilon);

}  // namespace orfcs

#endif  // ORFCS_SPARSITY_HPP_
