// Copyright 2026 The orfcs Authors
// SPDX-License-Identifier: Apache-2.0

#include "orfcs/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <string>

#include "orfcs/error.hpp"
#include "orfcs/hardy_space.hpp"
#include "orfcs/kernels.hpp"
#include "orfcs/rng.hpp"

namespace orfcs {

cdouble unit_root(std::size_t k, std::size_t n) {
  k %= n;
  // Reduce to a quadrant so the axis points come out exact.
  const std::size_t four_k = 4 * k;
  if (four_k % n == 0) {
    switch (four_k / n) {
      case 0:
        return {1.0, 0.0};
      case 1:
        return {0.0, 1.0};
      case 2:
        return {-1.0, 0.0};
      default:
        return {0.0, -1.0};
    }
  }
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
  return {std::cos(angle), std::sin(angle)};
}

SamplingGrid grid(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "grid size N must be at least 1");
  SamplingGrid g;
  g.n = n;
  g.points.resize(n);
  for (std::size_t r = 0; r < n; ++r) g.points[r] = unit_root(r, n);
  return g;
}

DictionaryMatrix::DictionaryMatrix(Eigen::MatrixXcd values, std::size_t n1,
                                   std::size_t n2, SamplingGrid grid,
                                   std::shared_ptr<const OrfBasis> basis_a,
                                   std::shared_ptr<const OrfBasis> basis_b)
    : values_(std::move(values)),
      n1_(n1),
      n2_(n2),
      grid_(std::move(grid)),
      basis_a_(std::move(basis_a)),
      basis_b_(std::move(basis_b)) {}

std::span<const cdouble> DictionaryMatrix::column(std::size_t k) const {
  const auto rows = static_cast<std::size_t>(values_.rows());
  return {values_.data() + k * rows, rows};
}

Eigen::MatrixXcd DictionaryMatrix::restrict_rows(std::span<const std::size_t> omega) const {
  Eigen::MatrixXcd out(static_cast<Eigen::Index>(omega.size()), values_.cols());
  for (std::size_t i = 0; i < omega.size(); ++i) {
    if (omega[i] >= rows()) {
      throw Error(ErrorCode::ShapeMismatch,
                  "measurement row " + std::to_string(omega[i] + 1) + " exceeds N = " +
                      std::to_string(rows()));
    }
    out.row(static_cast<Eigen::Index>(i)) = values_.row(static_cast<Eigen::Index>(omega[i]));
  }
  return out;
}

DictionaryMatrix assemble(std::shared_ptr<const OrfBasis> a,
                          std::shared_ptr<const OrfBasis> b, std::size_t n1,
                          std::size_t n2, const SamplingGrid& grid) {
  if (!a || n1 > a->order() || (n2 > 0 && (!b || n2 > b->order()))) {
    throw Error(ErrorCode::InvalidArgument,
                "dictionary window exceeds the basis orders");
  }
  const auto rows = static_cast<Eigen::Index>(grid.n);
  Eigen::MatrixXcd values(rows, static_cast<Eigen::Index>(n1 + n2));
  std::vector<cdouble> va(n1), vb(n2);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const cdouble z = grid.points[static_cast<std::size_t>(r)];
    a->evaluate_into(z, va);
    for (std::size_t k = 0; k < n1; ++k) values(r, static_cast<Eigen::Index>(k)) = va[k];
    if (n2 > 0) {
      b->evaluate_into(z, vb);
      for (std::size_t l = 0; l < n2; ++l) {
        values(r, static_cast<Eigen::Index>(n1 + l)) = vb[l];
      }
    }
  }
  return DictionaryMatrix(std::move(values), n1, n2, grid, std::move(a),
                          n2 > 0 ? std::move(b) : nullptr);
}

std::string_view to_string(SamplingModel model) {
  return model == SamplingModel::Bernoulli ? "bernoulli" : "uniform";
}

SamplingModel sampling_model_from_string(std::string_view name) {
  if (name == "uniform" || name == "uniform_subset") return SamplingModel::UniformSubset;
  if (name == "bernoulli") return SamplingModel::Bernoulli;
  throw Error(ErrorCode::ConfigError, "unknown sampling model '" + std::string(name) + "'");
}

std::vector<std::size_t> draw_omega(const MeasurementPlan& plan, std::size_t n) {
  if (plan.m < 1 || plan.m > n) {
    throw Error(ErrorCode::MOutOfRange, "measurement count m = " + std::to_string(plan.m) +
                                            " must satisfy 1 <= m <= N = " +
                                            std::to_string(n));
  }
  Rng rng(plan.seed);
  std::vector<std::size_t> omega;
  if (plan.model == SamplingModel::UniformSubset) {
    // Partial Fisher-Yates: the first m slots form a uniform m-subset.
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    for (std::size_t i = 0; i < plan.m; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
      std::swap(idx[i], idx[j]);
    }
    omega.assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(plan.m));
    std::sort(omega.begin(), omega.end());
  } else {
    const double p = static_cast<double>(plan.m) / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (rng.uniform() < p) omega.push_back(i);
    }
  }
  return omega;
}

Eigen::VectorXcd measure(const DictionaryMatrix& dict, const Eigen::VectorXd& theta,
                         std::span<const std::size_t> omega) {
  if (static_cast<std::size_t>(theta.size()) != dict.columns()) {
    throw Error(ErrorCode::ShapeMismatch,
                "coefficient vector has " + std::to_string(theta.size()) +
                    " entries; the dictionary has " + std::to_string(dict.columns()) +
                    " columns");
  }
  return dict.restrict_rows(omega) * theta.cast<cdouble>();
}

namespace {

// Phi^* Phi / N through the folding identity
//   (1/N) sum_r phi_k(z_r) conj(phi_l(z_r)) = sum_j f_jk conj(f_jl),
// f_jk = sum_{d = j mod N} b_dk, on the impulse table. For finite impulse
// responses this is exact arithmetic on 0/1 entries, which sums over the
// sampled values cannot give.
double gram_deviation(const OrfBasis& basis, std::size_t count, std::size_t n) {
  const OrfBasis head(basis.kind(), basis.poles(), count);
  const ImpulseTable t = head.impulse_response_auto();
  const auto rows = static_cast<Eigen::Index>(n);
  Eigen::MatrixXcd folded = Eigen::MatrixXcd::Zero(rows, t.coefficients.cols());
  for (Eigen::Index d = 0; d < t.coefficients.rows(); ++d) {
    folded.row(d % rows) += t.coefficients.row(d);
  }
  Eigen::MatrixXcd g = folded.adjoint() * folded;
  g -= Eigen::MatrixXcd::Identity(g.rows(), g.cols());
  return g.cwiseAbs().maxCoeff();
}

}  // namespace

OrthonormalityReport orthonormality_report(const DictionaryMatrix& dict) {
  OrthonormalityReport rep;
  const auto& v = dict.values();
  const auto n1 = static_cast<Eigen::Index>(dict.n1());
  const auto n2 = static_cast<Eigen::Index>(dict.n2());
  if (n1 > 0) rep.dev1 = gram_deviation(*dict.basis_a(), dict.n1(), dict.rows());
  if (n2 > 0) rep.dev2 = gram_deviation(*dict.basis_b(), dict.n2(), dict.rows());
  if (n1 > 0 && n2 > 0) {
    const Eigen::MatrixXcd sampled =
        v.leftCols(n1).adjoint() * v.rightCols(n2) / static_cast<double>(dict.rows());
    const OrfBasis wa(dict.basis_a()->kind(), dict.basis_a()->poles(), dict.n1());
    const OrfBasis wb(dict.basis_b()->kind(), dict.basis_b()->poles(), dict.n2());
    // impulse_gram gives <phi_k, psi_l> = sum_d b_dk conj(a_dl); the sampled
    // block carries the conjugate.
    const ImpulseGram g =
        impulse_gram(wa.impulse_response_auto(), wb.impulse_response_auto());
    rep.cross_dev = (sampled - g.values.conjugate()).cwiseAbs().maxCoeff();
    rep.impulse_error = g.error_bound;
  }
  return rep;
}

void write_dictionary_csv(const DictionaryMatrix& dict, std::ostream& os) {
  os << "r";
  for (std::size_t k = 1; k <= dict.columns(); ++k) os << ",re_" << k << ",im_" << k;
  os << '\n';
  const auto old_prec = os.precision(17);
  for (std::size_t r = 0; r < dict.rows(); ++r) {
    os << (r + 1);
    for (std::size_t k = 0; k < dict.columns(); ++k) {
      const cdouble v = dict.values()(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k));
      os << ',' << v.real() << ',' << v.imag();
    }
    os << '\n';
  }
  os.precision(old_prec);
}

}  // namespace orfcs
