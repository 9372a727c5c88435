// Copyright 2026 The orfcs Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ORFCS_SAMPLING_HPP_
#define ORFCS_SAMPLING_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "orfcs/rational_basis.hpp"

namespace orfcs {

/// The N-th roots of unity z_r = exp(2 pi i (r-1) / N), r = 1..N. Stored
/// 0-based: points[j] = z_{j+1}.
struct SamplingGrid {
  std::size_t n = 0;
  std::vector<cdouble> points;
};

SamplingGrid grid(std::size_t n);

/// exp(2 pi i k / n), exact at multiples of a quarter turn.
cdouble unit_root(std::size_t k, std::size_t n);

/// Composite sample matrix [Phi Psi]: entry (r, k) is phi_k(z_r) for k < n1 and
/// psi_{k-n1}(z_r) above. Keeps shared references to the bases it came from.
class DictionaryMatrix {
 public:
  DictionaryMatrix() = default;
  DictionaryMatrix(Eigen::MatrixXcd values, std::size_t n1, std::size_t n2,
                   SamplingGrid grid, std::shared_ptr<const OrfBasis> basis_a,
                   std::shared_ptr<const OrfBasis> basis_b);

  const Eigen::MatrixXcd& values() const { return values_; }
  std::size_t n1() const { return n1_; }
  std::size_t n2() const { return n2_; }
  std::size_t columns() const { return n1_ + n2_; }
  std::size_t rows() const { return grid_.n; }
  const SamplingGrid& grid() const { return grid_; }
  const std::shared_ptr<const OrfBasis>& basis_a() const { return basis_a_; }
  const std::shared_ptr<const OrfBasis>& basis_b() const { return basis_b_; }

  std::span<const cdouble> column(std::size_t k) const;

  /// Rows indexed by omega (0-based), all columns.
  Eigen::MatrixXcd restrict_rows(std::span<const std::size_t> omega) const;

 private:
  Eigen::MatrixXcd values_;
  std::size_t n1_ = 0;
  std::size_t n2_ = 0;
  SamplingGrid grid_;
  std::shared_ptr<const OrfBasis> basis_a_;
  std::shared_ptr<const OrfBasis> basis_b_;
};

/// Evaluates the first n1 functions of `a` and the first n2 of `b` on the
/// grid in closed form. `b` may be null when n2 == 0.
DictionaryMatrix assemble(std::shared_ptr<const OrfBasis> a,
                          std::shared_ptr<const OrfBasis> b, std::size_t n1,
                          std::size_t n2, const SamplingGrid& grid);

enum class SamplingModel { UniformSubset, Bernoulli };

std::string_view to_string(SamplingModel model);
SamplingModel sampling_model_from_string(std::string_view name);

struct MeasurementPlan {
  SamplingModel model = SamplingModel::UniformSubset;
  std::size_t m = 0;
  std::uint64_t seed = 0;
  /// Sorted 0-based row indices once drawn (serialised 1-based).
  std::vector<std::size_t> omega;
};

/// Draws the measurement rows. UniformSubset picks exactly m distinct rows;
/// Bernoulli keeps each row independently with probability m / N. The result
/// depends only on (model, m, N, seed). Throws MOutOfRange unless 1 <= m <= N.
std::vector<std::size_t> draw_omega(const MeasurementPlan& plan, std::size_t n);

/// H_Omega = [Phi Psi]_Omega theta. Throws ShapeMismatch on a length mismatch
/// or an out-of-range row.
Eigen::VectorXcd measure(const DictionaryMatrix& dict, const Eigen::VectorXd& theta,
                         std::span<const std::size_t> omega);

/// Deviations of the sampled Gram blocks from their continuous limits:
/// dev1 = max|Phi^*Phi/N - I|, dev2 = max|Psi^*Psi/N - I| and
/// cross_dev = max|Phi^*Psi/N - G| with G(k, l) = sum_d conj(b_dk) a_dl.
/// dev1 and dev2 are evaluated by folding the impulse responses modulo N,
/// which is exact for FIR columns; cross_dev uses the sampled values.
struct OrthonormalityReport {
  double dev1 = 0.0;
  double dev2 = 0.0;
  double cross_dev = 0.0;
  double impulse_error = 0.0;  // truncation error carried by G
};

OrthonormalityReport orthonormality_report(const DictionaryMatrix& dict);

/// CSV with header r,re_1,im_1,...; one row per grid point, r 1-based.
void write_dictionary_csv(const DictionaryMatrix& dict, std::ostream& os);

}  // namespace orfcs

#endif  // ORFCS_SAMPLING_HPP_
