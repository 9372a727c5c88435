// Copyright 2026 The orfcs Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ORFCS_RATIONAL_BASIS_HPP_
#define ORFCS_RATIONAL_BASIS_HPP_

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace orfcs {

using cdouble = std::complex<double>;

enum class BasisKind { Fir, Laguerre, Kautz, TakenakaMalmquist };

std::string_view to_string(BasisKind kind);
BasisKind basis_kind_from_string(std::string_view name);

/// Poles of an orthonormal rational basis, all strictly inside the unit disk.
struct PoleSequence {
  std::vector<cdouble> poles;
  /// When set, the multiset of poles must be closed under conjugation and the
  /// basis is built from real-rational functions.
  bool real_coefficients = false;
};

/// Throws PoleOutsideDisk / KindPoleMismatch when the sequence breaks its
/// invariants. The message names the offending pole.
void validate(const PoleSequence& seq);

/// A rational factor num(w)/den(w) in w = 1/z of degree at most two, with
/// den[0] == 1.
struct Section {
  std::array<cdouble, 3> num{};
  std::array<cdouble, 3> den{1.0, 0.0, 0.0};

  cdouble operator()(cdouble w) const;
};

/// One or two consecutive basis functions sharing a pole group. Function j of
/// the stage is fronts[j] times the all-pass factors of every earlier stage.
struct Stage {
  std::vector<Section> fronts;
  Section allpass;
  /// Pole moduli of this stage (one entry for a first-order stage, two for a
  /// conjugate pair), used by the tail majorant.
  std::vector<double> pole_moduli;
};

/// Truncated impulse responses b(d, k), d = 0..D-1, of the first n basis
/// functions, plus a certified bound on the l1 mass beyond D:
///   sum_{d >= D} |b(d, k)| <= tail_bound  for every column k.
struct ImpulseTable {
  Eigen::MatrixXcd coefficients;  // D x n, column-major
  std::size_t length = 0;
  double tail_bound = 0.0;
  bool real_valued = false;

  struct Column {
    std::span<const cdouble> coeffs;
    double tail_bound = 0.0;
  };
  Column column(std::size_t k) const;
  std::size_t size() const { return static_cast<std::size_t>(coefficients.cols()); }
};

/// Orthonormal rational function basis built in Takenaka-Malmquist form,
///
///   phi_k(z) = sqrt(1 - |xi_k|^2) / (1 - xi_k z^-1)
///              * prod_{j<k} (z^-1 - conj(xi_j)) / (1 - xi_j z^-1),
///
/// with FIR (all poles zero), Laguerre (one repeated real pole) and Kautz
/// (one repeated conjugate pair) as special pole patterns. In real-coefficient
/// mode each conjugate pair contributes two real second-order functions
/// spanning the same space as the complex pair.
class OrfBasis {
 public:
  OrfBasis(BasisKind kind, PoleSequence poles, std::size_t order);

  BasisKind kind() const { return kind_; }
  std::size_t order() const { return order_; }
  const PoleSequence& poles() const { return poles_; }
  bool real_coefficients() const { return real_; }
  /// max_k |xi_k| over the poles actually used.
  double decay_rate() const { return rho_; }
  const std::vector<Stage>& stages() const { return stages_; }

  /// (phi_1(z), ..., phi_n(z)) from the closed-form rational expression.
  /// Throws PoleOnGrid when z coincides with a pole or z == 0.
  std::vector<cdouble> evaluate(cdouble z) const;

  /// Writes the first out.size() basis values at z.
  void evaluate_into(cdouble z, std::span<cdouble> out) const;

  /// Certified tail bound for truncation length D, without materialising the
  /// table.
  double tail_bound(std::size_t length) const;

  /// Smallest D (capped at kMaxTruncation) whose tail bound is <= target.
  std::size_t truncation_for(double target = kDefaultTailTarget) const;

  ImpulseTable impulse_response(std::size_t length) const;

  /// Impulse table at truncation_for(target).
  ImpulseTable impulse_response_auto(double target = kDefaultTailTarget) const;

  static constexpr double kDefaultTailTarget = 1e-12;
  static constexpr std::size_t kMaxTruncation = std::size_t{1} << 16;

 private:
  BasisKind kind_;
  PoleSequence poles_;
  std::size_t order_;
  bool real_;
  double rho_ = 0.0;
  std::vector<Stage> stages_;
};

/// Validating factory; equivalent to the OrfBasis constructor.
OrfBasis build_basis(BasisKind kind, const PoleSequence& poles, std::size_t order);

}  // namespace orfcs

#endif  // ORFCS_RATIONAL_BASIS_HPP_
