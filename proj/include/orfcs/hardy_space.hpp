// Copyright 2026 The orfcs Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ORFCS_HARDY_SPACE_HPP_
#define ORFCS_HARDY_SPACE_HPP_

#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "orfcs/rational_basis.hpp"

namespace orfcs {

class DictionaryMatrix;

/// A truncated H2 inner product together with a bound on what the truncation
/// left out.
struct InnerProduct {
  cdouble value;
  double error_bound = 0.0;
};

/// <a, b> = sum_d a_d conj(b_d) over impulse responses. Columns of different
/// length are aligned by zero padding; the error bound is
/// tail_a * max|b| + tail_b * max|a| + tail_a * tail_b.
InnerProduct inner_product_impulse(const ImpulseTable::Column& a,
                                   const ImpulseTable::Column& b);

/// (1/N) sum_r F(z_r) conj(G(z_r)) over samples on the N-point grid.
/// Throws LengthMismatch unless both spans have exactly N entries.
cdouble inner_product_freq(std::span<const cdouble> fvals,
                           std::span<const cdouble> gvals, std::size_t n_grid);

/// Coherence of two bases restricted to their first n1 and n2 functions.
struct BasisCoherence {
  double mu = 0.0;
  std::pair<std::size_t, std::size_t> argmax{1, 1};  // 1-based (k, l)
  double tail_error = 0.0;
  std::size_t truncation_a = 0;
  std::size_t truncation_b = 0;
};

BasisCoherence mutual_coherence(const OrfBasis& a, const OrfBasis& b, std::size_t n1,
                                std::size_t n2);

/// Same, from precomputed impulse tables (all columns are used).
BasisCoherence mutual_coherence(const ImpulseTable& a, const ImpulseTable& b);

/// Full Gram matrix G(k, l) = <phi_k, psi_l> of two impulse tables, with the
/// largest per-entry truncation error.
struct ImpulseGram {
  Eigen::MatrixXcd values;
  double error_bound = 0.0;
};
ImpulseGram impulse_gram(const ImpulseTable& a, const ImpulseTable& b);

/// Coherence quantities of a sampled dictionary [Phi Psi].
struct MatrixCoherence {
  /// max_{i,j} |<Phi_i, Psi_j>| / (|Phi_i| |Psi_j|)
  double mu_matrix = 0.0;
  /// max{mu_Phi, mu_Psi}: largest entry modulus after scaling every column
  /// to l2 norm sqrt(N).
  double mu_m = 0.0;
  double mu_phi = 0.0;
  double mu_psi = 0.0;
};

MatrixCoherence matrix_coherences(const DictionaryMatrix& dict);

/// Spectral norm of Phi_{T1}^* Psi_{T2} / N. Indices are 0-based within each
/// half. Returns 0 when either set is empty.
double cross_block_norm(const DictionaryMatrix& dict, std::span<const std::size_t> t1,
                        std::span<const std::size_t> t2);

/// Combined report for the `coherence` subcommand.
struct CoherenceReport {
  BasisCoherence basis;
  MatrixCoherence matrix;
  std::size_t n_grid = 0;
};

}  // namespace orfcs

#endif  // ORFCS_HARDY_SPACE_HPP_
