// Copyright 2026 The orfcs Authors
// SPDX-License-Identifier: Apache-2.0

#include "orfcs/hardy_space.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "orfcs/error.hpp"
#include "orfcs/kernels.hpp"
#include "orfcs/sampling.hpp"

namespace orfcs {

InnerProduct inner_product_impulse(const ImpulseTable::Column& a,
                                   const ImpulseTable::Column& b) {
  InnerProduct ip;
  ip.value = kernels::dot_conj(a.coeffs, b.coeffs);
  const double max_a = kernels::max_abs(a.coeffs);
  const double max_b = kernels::max_abs(b.coeffs);
  ip.error_bound =
      a.tail_bound * max_b + b.tail_bound * max_a + a.tail_bound * b.tail_bound;
  // With unequal lengths the dropped stored entries of the longer column meet
  // the shorter column's tail, which tail * max|longer| already covers.
  return ip;
}

cdouble inner_product_freq(std::span<const cdouble> fvals,
                           std::span<const cdouble> gvals, std::size_t n_grid) {
  if (fvals.size() != gvals.size() || fvals.size() != n_grid || n_grid == 0) {
    throw Error(ErrorCode::LengthMismatch,
                "frequency samples must both have N = " + std::to_string(n_grid) +
                    " entries (got " + std::to_string(fvals.size()) + " and " +
                    std::to_string(gvals.size()) + ")");
  }
  return kernels::dot_conj(fvals, gvals) / static_cast<double>(n_grid);
}

ImpulseGram impulse_gram(const ImpulseTable& a, const ImpulseTable& b) {
  ImpulseGram g;
  g.values.resize(static_cast<Eigen::Index>(a.size()), static_cast<Eigen::Index>(b.size()));
  for (std::size_t k = 0; k < a.size(); ++k) {
    for (std::size_t l = 0; l < b.size(); ++l) {
      const InnerProduct ip = inner_product_impulse(a.column(k), b.column(l));
      g.values(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)) = ip.value;
      g.error_bound = std::max(g.error_bound, ip.error_bound);
    }
  }
  return g;
}

BasisCoherence mutual_coherence(const ImpulseTable& a, const ImpulseTable& b) {
  BasisCoherence report;
  report.truncation_a = a.length;
  report.truncation_b = b.length;
  // Strict '>' keeps the first (row-major) maximiser, so the argmax does not
  // depend on evaluation order.
  for (std::size_t k = 0; k < a.size(); ++k) {
    for (std::size_t l = 0; l < b.size(); ++l) {
      const InnerProduct ip = inner_product_impulse(a.column(k), b.column(l));
      const double mag = std::abs(ip.value);
      if (mag > report.mu) {
        report.mu = mag;
        report.argmax = {k + 1, l + 1};
      }
      report.tail_error = std::max(report.tail_error, ip.error_bound);
    }
  }
  return report;
}

BasisCoherence mutual_coherence(const OrfBasis& a, const OrfBasis& b, std::size_t n1,
                                std::size_t n2) {
  if (n1 == 0 || n2 == 0 || n1 > a.order() || n2 > b.order()) {
    throw Error(ErrorCode::InvalidArgument,
                "coherence window (" + std::to_string(n1) + ", " + std::to_string(n2) +
                    ") must be within the basis orders (" + std::to_string(a.order()) +
                    ", " + std::to_string(b.order()) + ")");
  }
  // Build reduced bases so the truncation is sized for the window only.
  const OrfBasis wa(a.kind(), a.poles(), n1);
  const OrfBasis wb(b.kind(), b.poles(), n2);
  return mutual_coherence(wa.impulse_response_auto(), wb.impulse_response_auto());
}

MatrixCoherence matrix_coherences(const DictionaryMatrix& dict) {
  if (dict.n1() == 0 || dict.n2() == 0 || dict.rows() == 0) {
    throw Error(ErrorCode::EmptyDictionary,
                "coherence needs a dictionary with both halves non-empty");
  }
  MatrixCoherence mc;
  std::vector<double> norms(dict.columns());
  for (std::size_t k = 0; k < dict.columns(); ++k) {
    norms[k] = std::sqrt(kernels::squared_norm(dict.column(k)));
  }
  for (std::size_t i = 0; i < dict.n1(); ++i) {
    for (std::size_t j = 0; j < dict.n2(); ++j) {
      const std::size_t jj = dict.n1() + j;
      const double denom = norms[i] * norms[jj];
      if (denom == 0.0) continue;
      const double c = std::abs(kernels::dot_conj(dict.column(jj), dict.column(i))) / denom;
      mc.mu_matrix = std::max(mc.mu_matrix, c);
    }
  }
  const double root_n = std::sqrt(static_cast<double>(dict.rows()));
  for (std::size_t k = 0; k < dict.columns(); ++k) {
    if (norms[k] == 0.0) continue;
    const double entry = kernels::max_abs(dict.column(k)) * root_n / norms[k];
    if (k < dict.n1()) {
      mc.mu_phi = std::max(mc.mu_phi, entry);
    } else {
      mc.mu_psi = std::max(mc.mu_psi, entry);
    }
  }
  mc.mu_m = std::max(mc.mu_phi, mc.mu_psi);
  return mc;
}

double cross_block_norm(const DictionaryMatrix& dict, std::span<const std::size_t> t1,
                        std::span<const std::size_t> t2) {
  if (t1.empty() || t2.empty()) return 0.0;
  Eigen::MatrixXcd block(static_cast<Eigen::Index>(t1.size()),
                         static_cast<Eigen::Index>(t2.size()));
  for (std::size_t i = 0; i < t1.size(); ++i) {
    for (std::size_t j = 0; j < t2.size(); ++j) {
      if (t1[i] >= dict.n1() || t2[j] >= dict.n2()) {
        throw Error(ErrorCode::ShapeMismatch, "support index outside its dictionary half");
      }
      // (Phi^* Psi)(i, j) = sum_r conj(Phi_ri) Psi_rj
      block(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          kernels::dot_conj(dict.column(dict.n1() + t2[j]), dict.column(t1[i]));
    }
  }
  block /= static_cast<double>(dict.rows());
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(block);
  return svd.singularValues()(0);
}

}  // namespace orfcs
