// Copyright 2026 The orfcs Authors
// SPDX-License-Identifier: Apache-2.0

#include "orfcs/recovery.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include "orfcs/error.hpp"
#include "orfcs/hardy_space.hpp"

namespace orfcs {

std::string_view to_string(SolverStatus status) {
  switch (status) {
    case SolverStatus::Optimal:
      return "Optimal";
    case SolverStatus::MaxIters:
      return "MaxIters";
    case SolverStatus::Infeasible:
      return "Infeasible";
  }
  return "Unknown";
}

std::string_view to_string(SolverMethod method) {
  switch (method) {
    case SolverMethod::Auto:
      return "auto";
    case SolverMethod::InteriorPoint:
      return "interior_point";
    case SolverMethod::Admm:
      return "admm";
  }
  return "unknown";
}

std::string_view to_string(CertificateStatus status) {
  return status == CertificateStatus::Ok ? "Ok" : "SingularGram";
}

Eigen::MatrixXd stack_real(const Eigen::MatrixXcd& a) {
  Eigen::MatrixXd out(2 * a.rows(), a.cols());
  out.topRows(a.rows()) = a.real();
  out.bottomRows(a.rows()) = a.imag();
  return out;
}

Eigen::VectorXd stack_real(const Eigen::VectorXcd& h) {
  Eigen::VectorXd out(2 * h.size());
  out.head(h.size()) = h.real();
  out.tail(h.size()) = h.imag();
  return out;
}

std::vector<std::size_t> support_of(const Eigen::VectorXd& theta, double threshold) {
  std::vector<std::size_t> s;
  if (theta.size() == 0) return s;
  const double cut = threshold * theta.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    if (std::abs(theta(i)) > cut) s.push_back(static_cast<std::size_t>(i));
  }
  return s;
}

namespace {

// Reduced equality system r x = y with orthonormal rows, equivalent to the
// stacked real system up to the discarded null directions.
struct ReducedSystem {
  Eigen::MatrixXd r;
  Eigen::VectorXd y;
  Eigen::VectorXd sigma;  // singular values kept, so ||sigma .* (r x - y)|| is
                          // the residual of the original system
  double out_of_range = 0.0;  // part of the data outside the column space
  std::size_t rank = 0;
};

ReducedSystem reduce(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, double rank_tol) {
  ReducedSystem sys;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) > rank_tol * smax) ++rank;
  sys.rank = static_cast<std::size_t>(rank);
  const Eigen::MatrixXd u = svd.matrixU().leftCols(rank);
  const Eigen::VectorXd ub = u.transpose() * b;
  sys.out_of_range = (b - u * ub).norm();
  sys.r = svd.matrixV().leftCols(rank).transpose();
  sys.sigma = sv.head(rank);
  sys.y = ub.cwiseQuotient(sys.sigma);
  return sys;
}

double step_to_boundary(const Eigen::VectorXd& v, const Eigen::VectorXd& dv) {
  double alpha = 1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (dv(i) < 0.0) alpha = std::min(alpha, -v(i) / dv(i));
  }
  return alpha;
}

struct LpOutcome {
  Eigen::VectorXd theta;
  Eigen::VectorXd lambda;  // dual multipliers of r x = y, empty when unknown
  int iterations = 0;
  bool converged = false;
};

// Mehrotra predictor-corrector on
//   min 1^T (p + q)  s.t.  r p - r q = y,  p, q >= 0.
// The normal matrix is r (D_p + D_q) r^T since the two blocks share r.
LpOutcome interior_point(const ReducedSystem& sys, const BpOptions& opt) {
  const Eigen::Index n = sys.r.cols();
  const Eigen::Index k = sys.r.rows();
  const Eigen::MatrixXd& r = sys.r;
  const Eigen::VectorXd& y = sys.y;
  LpOutcome out;
  out.theta = Eigen::VectorXd::Zero(n);
  if (k == 0) {
    out.converged = true;
    return out;
  }
  if (k == n) {
    // Square orthogonal r: the feasible set is the single point r^T y.
    out.theta = r.transpose() * y;
    out.converged = true;
    return out;
  }

  auto apply_a = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
    return r * (x.head(n) - x.tail(n));
  };
  auto apply_at = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
    Eigen::VectorXd w(2 * n);
    const Eigen::VectorXd rv = r.transpose() * v;
    w.head(n) = rv;
    w.tail(n) = -rv;
    return w;
  };

  const Eigen::VectorXd c = Eigen::VectorXd::Ones(2 * n);
  // Starting point: the rows of r are orthonormal, so (A A^T)^{-1} = I / 2.
  Eigen::VectorXd x = apply_at(y) / 2.0;
  Eigen::VectorXd lam = apply_a(c) / 2.0;  // zero by symmetry, kept general
  Eigen::VectorXd s = c - apply_at(lam);
  double dx = std::max(-1.5 * x.minCoeff(), 0.0);
  double ds = std::max(-1.5 * s.minCoeff(), 0.0);
  x.array() += dx;
  s.array() += ds;
  const double xs = x.dot(s);
  x.array() += 0.5 * xs / s.sum();
  s.array() += 0.5 * xs / x.sum();

  const double c_scale = 1.0 + c.norm();
  const auto dim = static_cast<double>(2 * n);
  double best_merit = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_x = x;
  Eigen::VectorXd best_lam = lam;

  for (int it = 0; it < opt.max_iters; ++it) {
    out.iterations = it + 1;
    const Eigen::VectorXd rp = y - apply_a(x);
    const Eigen::VectorXd rd = c - apply_at(lam) - s;
    const double mu = x.dot(s) / dim;
    const double pobj = c.dot(x);
    const double dobj = y.dot(lam);
    // Primal feasibility in the metric of the original data (unit norm here):
    // y is noisy along directions with small singular values and need not be
    // matched there beyond what the original residual can see.
    const double primal = sys.sigma.cwiseProduct(rp).norm();
    const double gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj));
    const double merit = std::max({primal / opt.feas_tol, rd.norm() / c_scale / opt.feas_tol,
                                   gap / opt.opt_tol});
    if (merit < best_merit) {
      best_merit = merit;
      best_x = x;
      best_lam = lam;
    }
    if (merit <= 1.0) {
      out.converged = true;
      break;
    }
    // Past the accuracy the data supports the steps chase rounding noise in
    // y and can run away; keep the best iterate instead.
    if (merit > 1e6 * best_merit) break;

    const Eigen::VectorXd d = x.cwiseQuotient(s);
    const Eigen::VectorXd dsum = d.head(n) + d.tail(n);
    // r D r^T = R^T R from a QR factorisation of D^{1/2} r^T, which keeps
    // the conditioning of the scaled matrix instead of squaring it.
    const Eigen::MatrixXd w = dsum.cwiseSqrt().asDiagonal() * r.transpose();
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(w);
    Eigen::MatrixXd rr = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
    const double rmax = rr.diagonal().cwiseAbs().maxCoeff();
    if (!(rmax > 0.0) || !std::isfinite(rmax)) break;
    for (Eigen::Index i = 0; i < k; ++i) {
      // Keep the triangle invertible once some scales collapse.
      if (std::abs(rr(i, i)) < 1e-150 * rmax) rr(i, i) = 1e-150 * rmax;
    }
    struct Normal {
      const Eigen::MatrixXd& rr;
      Eigen::VectorXd solve(const Eigen::VectorXd& b) const {
        const Eigen::VectorXd t = rr.transpose().triangularView<Eigen::Lower>().solve(b);
        return rr.triangularView<Eigen::Upper>().solve(t);
      }
    } chol{rr};
    auto solve = [&](const Eigen::VectorXd& rxs, Eigen::VectorXd& ddx, Eigen::VectorXd& dl,
                     Eigen::VectorXd& dds) {
      // S dx + X ds = rxs, A dx = rp, A^T dl + ds = rd.
      const Eigen::VectorXd sinv_rxs = rxs.cwiseQuotient(s);
      const Eigen::VectorXd rhs = rp - apply_a(sinv_rxs) + apply_a(d.cwiseProduct(rd));
      dl = chol.solve(rhs);
      dds = rd - apply_at(dl);
      ddx = sinv_rxs - d.cwiseProduct(dds);
    };

    Eigen::VectorXd dx_a, dl_a, ds_a;
    solve(-x.cwiseProduct(s), dx_a, dl_a, ds_a);
    const double ap_a = step_to_boundary(x, dx_a);
    const double ad_a = step_to_boundary(s, ds_a);
    const double mu_aff = (x + ap_a * dx_a).dot(s + ad_a * ds_a) / dim;
    const double sigma = std::pow(mu_aff / mu, 3.0);

    Eigen::VectorXd dx_c, dl_c, ds_c;
    const Eigen::VectorXd rxs =
        (-x.cwiseProduct(s) - dx_a.cwiseProduct(ds_a)).array() + sigma * mu;
    solve(rxs, dx_c, dl_c, ds_c);
    if (!dx_c.allFinite() || !dl_c.allFinite() || !ds_c.allFinite()) break;
    const double ap = std::min(1.0, 0.995 * step_to_boundary(x, dx_c));
    const double ad = std::min(1.0, 0.995 * step_to_boundary(s, ds_c));
    x += ap * dx_c;
    lam += ad * dl_c;
    s += ad * ds_c;
  }
  out.theta = best_x.head(n) - best_x.tail(n);
  out.lambda = best_lam;
  return out;
}

double soft_threshold(double v, double t) {
  if (v > t) return v - t;
  if (v < -t) return v + t;
  return 0.0;
}

// ADMM on min ||z||_1 s.t. x = z, r x = y. Projection onto the affine set is
// explicit because r has orthonormal rows.
LpOutcome admm(const ReducedSystem& sys, const BpOptions& opt) {
  const Eigen::Index n = sys.r.cols();
  LpOutcome out;
  auto project = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
    return v - sys.r.transpose() * (sys.r * v - sys.y);
  };
  Eigen::VectorXd x = project(Eigen::VectorXd::Zero(n));
  Eigen::VectorXd z = x;
  Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
  const double rho = opt.admm_rho;
  for (int it = 0; it < opt.admm_max_iters; ++it) {
    out.iterations = it + 1;
    x = project(z - u);
    const Eigen::VectorXd z_old = z;
    for (Eigen::Index i = 0; i < n; ++i) z(i) = soft_threshold(x(i) + u(i), 1.0 / rho);
    u += x - z;
    const double primal = (x - z).norm();
    const double dual = rho * (z - z_old).norm();
    const double scale = std::max(1.0, x.norm());
    if (primal <= opt.feas_tol * scale && dual <= opt.opt_tol * scale) {
      out.converged = true;
      break;
    }
  }
  out.theta = x;
  return out;
}

// Least-squares refits on the entries above a ladder of relative thresholds,
// checked against the original system (a, b). Keeps the sparsest refit that
// is feasible and no worse in l1 than the solver's iterate; returns true when
// theta was replaced.
bool polish(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, std::size_t rank,
            Eigen::VectorXd& theta, const BpOptions& opt) {
  if (theta.size() == 0 || !theta.allFinite()) return false;
  const double tol = opt.feas_tol * std::max(1.0, b.norm());
  const double bound = theta.lpNorm<1>() + opt.opt_tol * std::max(1.0, theta.lpNorm<1>());
  std::optional<Eigen::VectorXd> best;
  std::size_t last_size = 0;
  for (double cut : {1e-6, 1e-5, 1e-4, 1e-3, 1e-2}) {
    const std::vector<std::size_t> supp = support_of(theta, cut);
    if (supp.empty() || supp.size() > rank || supp.size() == last_size) continue;
    last_size = supp.size();
    Eigen::MatrixXd as(a.rows(), static_cast<Eigen::Index>(supp.size()));
    for (std::size_t j = 0; j < supp.size(); ++j) {
      as.col(static_cast<Eigen::Index>(j)) = a.col(static_cast<Eigen::Index>(supp[j]));
    }
    const Eigen::VectorXd ts = as.colPivHouseholderQr().solve(b);
    if (!ts.allFinite() || (as * ts - b).norm() > tol || ts.lpNorm<1>() > bound) continue;
    Eigen::VectorXd cand = Eigen::VectorXd::Zero(theta.size());
    for (std::size_t j = 0; j < supp.size(); ++j) {
      cand(static_cast<Eigen::Index>(supp[j])) = ts(static_cast<Eigen::Index>(j));
    }
    best = std::move(cand);
  }
  if (!best) return false;
  theta = *best;
  return true;
}

// Optimality of theta for the data it reproduces, y' = r theta, from a dual
// vector scaled into the feasible box |r^T lambda| <= 1: the gap
// ||theta||_1 - lambda^T r theta is zero exactly at a minimiser.
bool dual_certifies(const ReducedSystem& sys, const Eigen::VectorXd& theta,
                    const Eigen::VectorXd& lambda, double opt_tol) {
  if (lambda.size() != sys.r.rows() || !lambda.allFinite()) return false;
  const Eigen::VectorXd v = sys.r.transpose() * lambda;
  const double scale = std::max(1.0, v.lpNorm<Eigen::Infinity>());
  const double l1 = theta.lpNorm<1>();
  return l1 - v.dot(theta) / scale <= opt_tol * std::max(1.0, l1);
}

}  // namespace

RecoveryResult basis_pursuit(const Eigen::MatrixXcd& a_omega,
                             const Eigen::VectorXcd& h_omega, const BpOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  if (a_omega.rows() < 1 || a_omega.cols() < 1) {
    throw Error(ErrorCode::ShapeMismatch, "basis pursuit needs at least one row and column");
  }
  if (a_omega.rows() != h_omega.size()) {
    throw Error(ErrorCode::ShapeMismatch,
                "measurement vector has " + std::to_string(h_omega.size()) +
                    " entries; the sensing matrix has " + std::to_string(a_omega.rows()) +
                    " rows");
  }
  RecoveryResult res;
  const Eigen::Index n = a_omega.cols();
  res.theta_hat = Eigen::VectorXd::Zero(n);
  auto finish = [&]() {
    res.objective = res.theta_hat.lpNorm<1>();
    res.residual = (a_omega * res.theta_hat.cast<cdouble>() - h_omega).norm();
    res.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return res;
  };

  const Eigen::MatrixXd a = stack_real(a_omega);
  const Eigen::VectorXd b = stack_real(h_omega);
  const double h_norm = b.norm();
  const double tol_abs = options.feas_tol * std::max(1.0, h_norm);
  if (h_norm == 0.0) {
    res.method = options.method == SolverMethod::Admm ? SolverMethod::Admm
                                                      : SolverMethod::InteriorPoint;
    return finish();
  }

  // Work with unit-norm data; the minimiser scales linearly.
  const Eigen::VectorXd b_unit = b / h_norm;
  const ReducedSystem sys = reduce(a, b_unit, options.rank_tol);
  res.constraint_rank = sys.rank;
  if (sys.out_of_range * h_norm > tol_abs) {
    res.status = SolverStatus::Infeasible;
    return finish();
  }

  auto attempt = [&](SolverMethod method) {
    LpOutcome lp = method == SolverMethod::Admm ? admm(sys, options) : interior_point(sys, options);
    res.iterations += lp.iterations;
    res.method = method;
    res.polished = options.polish && polish(a, b_unit, sys.rank, lp.theta, options);
    res.theta_hat = lp.theta * h_norm;
    const double resid = (a_omega * res.theta_hat.cast<cdouble>() - h_omega).norm();
    return resid <= tol_abs &&
           (lp.converged || dual_certifies(sys, lp.theta, lp.lambda, options.opt_tol));
  };

  bool ok = false;
  if (options.method == SolverMethod::Admm) {
    ok = attempt(SolverMethod::Admm);
  } else {
    ok = attempt(SolverMethod::InteriorPoint);
    if (!ok && options.method == SolverMethod::Auto) {
      const Eigen::VectorXd ipm_theta = res.theta_hat;
      const bool ipm_polished = res.polished;
      ok = attempt(SolverMethod::Admm);
      if (!ok) {
        // Keep whichever iterate is closer to feasible.
        const Eigen::VectorXd admm_theta = res.theta_hat;
        const double r_admm = (a_omega * admm_theta.cast<cdouble>() - h_omega).norm();
        const double r_ipm = (a_omega * ipm_theta.cast<cdouble>() - h_omega).norm();
        if (r_ipm <= r_admm) {
          res.theta_hat = ipm_theta;
          res.polished = ipm_polished;
          res.method = SolverMethod::InteriorPoint;
        }
      }
    }
  }
  res.status = ok ? SolverStatus::Optimal : SolverStatus::MaxIters;
  return finish();
}

std::optional<L0Result> l0_bruteforce(const Eigen::MatrixXcd& a_omega,
                                      const Eigen::VectorXcd& h_omega, std::size_t s_max,
                                      double feas_tol) {
  const auto n = static_cast<std::size_t>(a_omega.cols());
  if (n > kL0MaxColumns || s_max > kL0MaxSparsity) {
    std::ostringstream os;
    os << "exhaustive l0 search is limited to " << kL0MaxColumns << " columns and s_max <= "
       << kL0MaxSparsity << " (got " << n << " columns, s_max = " << s_max << ")";
    throw Error(ErrorCode::TooLarge, os.str());
  }
  if (a_omega.rows() != h_omega.size()) {
    throw Error(ErrorCode::ShapeMismatch, "measurement vector length differs from row count");
  }
  const Eigen::MatrixXd a = stack_real(a_omega);
  const Eigen::VectorXd b = stack_real(h_omega);
  const double tol = feas_tol * std::max(1.0, b.norm());

  L0Result best;
  best.theta = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  if (b.norm() <= tol) return best;

  std::vector<std::size_t> idx;
  for (std::size_t s = 1; s <= std::min(s_max, n); ++s) {
    idx.resize(s);
    for (std::size_t i = 0; i < s; ++i) idx[i] = i;
    while (true) {
      Eigen::MatrixXd as(a.rows(), static_cast<Eigen::Index>(s));
      for (std::size_t j = 0; j < s; ++j) {
        as.col(static_cast<Eigen::Index>(j)) = a.col(static_cast<Eigen::Index>(idx[j]));
      }
      const Eigen::VectorXd ts = as.completeOrthogonalDecomposition().solve(b);
      if ((as * ts - b).norm() <= tol) {
        best.support = idx;
        for (std::size_t j = 0; j < s; ++j) {
          best.theta(static_cast<Eigen::Index>(idx[j])) = ts(static_cast<Eigen::Index>(j));
        }
        return best;
      }
      // Next combination in lexicographic order.
      std::size_t i = s;
      while (i > 0 && idx[i - 1] == n - s + (i - 1)) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return std::nullopt;
}

CertificateReport dual_certificate(const Eigen::MatrixXcd& a_omega,
                                   std::span<const std::size_t> t,
                                   std::span<const double> tau,
                                   const CertificateOptions& options) {
  const auto n = static_cast<std::size_t>(a_omega.cols());
  if (t.size() != tau.size()) {
    throw Error(ErrorCode::LengthMismatch, "sign vector length must equal |T|");
  }
  std::vector<bool> on_support(n, false);
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] >= n) throw Error(ErrorCode::ShapeMismatch, "support index exceeds column count");
    if (on_support[t[i]]) throw Error(ErrorCode::InvalidArgument, "support has repeated indices");
    if (tau[i] != 1.0 && tau[i] != -1.0) {
      throw Error(ErrorCode::InvalidArgument, "signs must be +1 or -1");
    }
    on_support[t[i]] = true;
  }

  CertificateReport rep;
  rep.pi = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  if (t.empty()) {
    rep.cond_row_space = rep.cond_sign_match = rep.cond_strict = true;
    return rep;
  }

  const Eigen::MatrixXd a = stack_real(a_omega);
  Eigen::MatrixXd at(a.rows(), static_cast<Eigen::Index>(t.size()));
  for (std::size_t j = 0; j < t.size(); ++j) {
    at.col(static_cast<Eigen::Index>(j)) = a.col(static_cast<Eigen::Index>(t[j]));
  }
  const Eigen::MatrixXd gram = at.transpose() * at;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
  rep.gram_min_eig = eig.eigenvalues()(0);
  rep.gram_max_eig = eig.eigenvalues()(eig.eigenvalues().size() - 1);
  if (!(rep.gram_min_eig > options.inv_tol * rep.gram_max_eig)) {
    rep.status = CertificateStatus::SingularGram;
    return rep;
  }

  const Eigen::VectorXd tv = Eigen::Map<const Eigen::VectorXd>(tau.data(),
                                                               static_cast<Eigen::Index>(tau.size()));
  const Eigen::VectorXd w = at * gram.ldlt().solve(tv);
  rep.pi = a.transpose() * w;

  // Row space check, independent of the construction.
  Eigen::BDCSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) > 1e-11 * sv(0)) ++rank;
  const Eigen::MatrixXd v = svd.matrixV().leftCols(rank);
  rep.row_space_residual = (rep.pi - v * (v.transpose() * rep.pi)).norm();
  rep.cond_row_space =
      rep.row_space_residual <= options.row_space_tol * std::max(1.0, rep.pi.norm());

  for (std::size_t j = 0; j < t.size(); ++j) {
    rep.sign_match_error =
        std::max(rep.sign_match_error, std::abs(rep.pi(static_cast<Eigen::Index>(t[j])) - tau[j]));
  }
  rep.cond_sign_match = rep.sign_match_error <= options.sign_tol;

  for (std::size_t k = 0; k < n; ++k) {
    if (!on_support[k]) {
      rep.off_support_max =
          std::max(rep.off_support_max, std::abs(rep.pi(static_cast<Eigen::Index>(k))));
    }
  }
  rep.cond_strict = rep.off_support_max < 1.0;
  return rep;
}

CertificateReport dual_certificate(const DictionaryMatrix& dict,
                                   std::span<const std::size_t> omega,
                                   std::span<const std::size_t> t,
                                   std::span<const double> tau,
                                   const CertificateOptions& options) {
  return dual_certificate(dict.restrict_rows(omega), t, tau, options);
}

std::optional<double> c_f_term(double cross_norm, double mu, std::size_t t_size,
                               std::size_t n_total, double delta) {
  const double bracket =
      (0.5 + cross_norm) / std::sqrt(2.0 * std::log(2.0 * static_cast<double>(n_total) / delta)) -
      mu * std::sqrt(static_cast<double>(t_size));
  if (!(bracket > 0.0)) return std::nullopt;
  return 4.0 / (bracket * bracket);
}

std::optional<double> measurement_bound_value(double c, double mu_m, std::size_t t_size,
                                              std::size_t n_total, double delta,
                                              std::optional<double> c_f) {
  if (!c_f) return std::nullopt;
  const double inner = std::max({static_cast<double>(t_size),
                                 std::log(static_cast<double>(n_total) / delta), *c_f});
  return c * mu_m * mu_m * inner * inner;
}

BoundReport measurement_bound(const DictionaryMatrix& dict, std::span<const std::size_t> t1,
                              std::span<const std::size_t> t2, double delta, double c) {
  if (!(delta > 0.0 && delta < 1.0)) {
    std::ostringstream os;
    os << "failure budget delta must lie in (0, 1) (got " << delta << ")";
    throw Error(ErrorCode::BadDelta, os.str());
  }
  if (!(c > 0.0)) throw Error(ErrorCode::InvalidArgument, "constant C must be positive");
  auto check_half = [](std::span<const std::size_t> t, std::size_t limit, const char* name) {
    std::vector<bool> seen(limit, false);
    for (std::size_t i : t) {
      if (i >= limit) {
        throw Error(ErrorCode::ShapeMismatch,
                    std::string(name) + " index " + std::to_string(i + 1) + " exceeds " +
                        std::to_string(limit));
      }
      if (seen[i]) throw Error(ErrorCode::InvalidArgument, std::string(name) + " repeats an index");
      seen[i] = true;
    }
  };
  check_half(t1, dict.n1(), "T1");
  check_half(t2, dict.n2(), "T2");

  BoundReport rep;
  rep.t1.assign(t1.begin(), t1.end());
  rep.t2.assign(t2.begin(), t2.end());
  rep.delta = delta;
  rep.c = c;
  const MatrixCoherence mc = matrix_coherences(dict);
  rep.mu_matrix = mc.mu_matrix;
  rep.mu_m = mc.mu_m;
  rep.cross_norm = cross_block_norm(dict, t1, t2);
  const std::size_t t_size = t1.size() + t2.size();
  const std::size_t n_total = dict.columns();
  rep.bracket = (0.5 + rep.cross_norm) /
                    std::sqrt(2.0 * std::log(2.0 * static_cast<double>(n_total) / delta)) -
                rep.mu_matrix * std::sqrt(static_cast<double>(t_size));
  rep.c_f_term = c_f_term(rep.cross_norm, rep.mu_matrix, t_size, n_total, delta);
  rep.m_min = measurement_bound_value(c, rep.mu_m, t_size, n_total, delta, rep.c_f_term);
  rep.feasible = rep.c_f_term.has_value();
  rep.success_probability = 1.0 - 6.0 * delta;
  if (!rep.feasible) {
    std::ostringstream os;
    os << "bound not applicable: mu * sqrt(|T|) = "
       << rep.mu_matrix * std::sqrt(static_cast<double>(t_size))
       << " is not below (1/2 + cross_norm) / sqrt(2 log(2 (n1+n2) / delta)) = "
       << rep.bracket + rep.mu_matrix * std::sqrt(static_cast<double>(t_size))
       << "; the coherence is too large for this support size";
    rep.message = os.str();
  }
  return rep;
}

double gram_concentration_threshold(std::size_t t_size, double mu_m, double f_norm,
                                    double delta, double c_r, double c_t) {
  const double t = static_cast<double>(t_size);
  const double a = 4.0 * c_r * c_r * (1.0 + 3.0 * f_norm) * std::log(t);
  const double b = c_t * std::log(3.0 / delta);
  return t * mu_m * mu_m * std::max(a, b);
}

double sigma_bar(double m, double mu_m, std::size_t t_size) {
  const double v =
      m * mu_m * mu_m * std::max(2.0, static_cast<double>(t_size) * mu_m / std::sqrt(m));
  return std::sqrt(v);
}

double off_support_lambda(double cross_norm, double mu, std::size_t t_size, double a,
                          double m, double mu_m) {
  const double root_t = std::sqrt(static_cast<double>(t_size));
  return (mu * root_t + a * sigma_bar(m, mu_m, t_size) / m + root_t * mu_m / std::sqrt(m)) /
         (0.5 + cross_norm);
}

}  // namespace orfcs
