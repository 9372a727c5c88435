// Copyright 2026 The orfcs Authors
// SPDX-License-Identifier: Apache-2.0

#include "orfcs/sparsity.hpp"

#include <cmath>
#include <sstream>

#include "orfcs/error.hpp"

namespace orfcs {

SparsitySummary summarize_magnitudes(std::span<const double> magnitudes,
                                     double declared_tail, double epsilon) {
  if (!(epsilon >= 0.0) || !(declared_tail >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "epsilon and declared tail must be >= 0");
  }
  if (epsilon <= declared_tail && !(epsilon == 0.0 && declared_tail == 0.0)) {
    std::ostringstream os;
    os << "epsilon = " << epsilon << " does not exceed the declared tail mass "
       << declared_tail << "; the cut-off is not determined by the stored head";
    throw Error(ErrorCode::TailDominates, os.str());
  }
  const std::size_t len = magnitudes.size();
  // suffix[K-1] = sum_{k >= K} |alpha_k| + declared_tail, accumulated from the
  // end so small tails are not swamped by the head.
  std::vector<double> suffix(len + 1);
  suffix[len] = declared_tail;
  for (std::size_t i = len; i-- > 0;) suffix[i] = suffix[i + 1] + std::abs(magnitudes[i]);

  SparsitySummary s;
  s.epsilon = epsilon;
  std::size_t k = len + 1;  // 1-based K with suffix[K-1] <= epsilon
  while (k > 1 && suffix[k - 2] <= epsilon) --k;
  s.n_epsilon = k;
  for (std::size_t i = 1; i < k; ++i) {
    if (magnitudes[i - 1] != 0.0) s.support.push_back(i);
  }
  s.eps_zero_norm = s.support.size();
  return s;
}

SparsitySummary summarize(const CoefficientVector& alpha, double epsilon) {
  return summarize_magnitudes(alpha.values, alpha.declared_tail, epsilon);
}

bool is_pair_sparse(const CoefficientVector& theta1, const CoefficientVector& theta2,
                    double epsilon, std::size_t s) {
  return summarize(theta1, epsilon).eps_zero_norm +
             summarize(theta2, epsilon).eps_zero_norm <=
         s;
}

double uncertainty_lhs(std::size_t norm_a, std::size_t norm_b, double epsilon) {
  const double a = std::sqrt(static_cast<double>(norm_a)) + epsilon;
  const double b = std::sqrt(static_cast<double>(norm_b)) + epsilon;
  return a * a + b * b;
}

namespace {

void require_positive_mu(double mu) {
  if (!(mu > 0.0)) {
    std::ostringstream os;
    os << "mutual coherence must be positive (got " << mu << ")";
    throw Error(ErrorCode::NonpositiveMu, os.str());
  }
}

}  // namespace

UncertaintyCheck check_uncertainty(std::size_t norm_a, std::size_t norm_b, double mu,
                                   double epsilon) {
  require_positive_mu(mu);
  UncertaintyCheck c;
  c.lhs = uncertainty_lhs(norm_a, norm_b, epsilon);
  c.rhs = 2.0 / mu;
  c.holds = c.lhs >= c.rhs - kBoundTolerance;
  return c;
}

UncertaintyCheck check_uncertainty(const CoefficientVector& alpha,
                                   const CoefficientVector& beta, double mu,
                                   double epsilon) {
  require_positive_mu(mu);
  return check_uncertainty(summarize(alpha, epsilon).eps_zero_norm,
                           summarize(beta, epsilon).eps_zero_norm, mu, epsilon);
}

UniquenessCheck check_uniqueness(std::size_t norm_1, std::size_t norm_2, double mu,
                                 double epsilon) {
  require_positive_mu(mu);
  UniquenessCheck c;
  c.lhs = uncertainty_lhs(norm_1, norm_2, epsilon);
  c.rhs = 1.0 / mu;
  c.unique_guaranteed = c.lhs < c.rhs;
  return c;
}

UniquenessCheck check_uniqueness(const CoefficientVector& theta1,
                                 const CoefficientVector& theta2, double mu,
                                 double epsilon) {
  require_positive_mu(mu);
  return check_uniqueness(summarize(theta1, epsilon).eps_zero_norm,
                          summarize(theta2, epsilon).eps_zero_norm, mu, epsilon);
}

}  // namespace orfcs
