// Copyright 2026 The orfcs Authors
// SPDX-License-Identifier: Apache-2.0

#include "orfcs/rational_basis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "orfcs/error.hpp"

namespace orfcs {
namespace {

std::string format_pole(std::size_t index, cdouble p) {
  std::ostringstream os;
  os.precision(17);
  os << "pole #" << (index + 1) << " = (" << p.real() << ", " << p.imag()
     << ") with modulus " << std::abs(p);
  return os.str();
}

bool is_real(cdouble p) { return p.imag() == 0.0; }

// One step of a first-order nonnegative section
//   y[d] = a*y[d-1] + b0*x[d] + b1*x[d-1],
// used to build a coefficient-wise majorant of each basis function.
struct Majorant {
  double a = 0.0;
  double b0 = 0.0;
  double b1 = 0.0;
};

struct MajorantSignal {
  std::vector<double> values;
  double tail = 0.0;  // upper bound on sum_{d >= D} values[d]
};

MajorantSignal apply(const Majorant& m, const MajorantSignal& in) {
  const std::size_t length = in.values.size();
  MajorantSignal out;
  out.values.resize(length);
  double prev_y = 0.0;
  double prev_x = 0.0;
  for (std::size_t d = 0; d < length; ++d) {
    const double x = in.values[d];
    const double y = m.a * prev_y + m.b0 * x + m.b1 * prev_x;
    out.values[d] = y;
    prev_y = y;
    prev_x = x;
  }
  // Summing the recursion over d >= D:
  //   Y = (a*y[D-1] + b1*x[D-1] + (b0 + b1)*X) / (1 - a)
  // b0 + b1 >= 0 for every majorant built below, so an upper bound on X
  // yields an upper bound on Y.
  const double tail =
      (m.a * prev_y + m.b1 * prev_x + (m.b0 + m.b1) * in.tail) / (1.0 - m.a);
  out.tail = std::max(tail, 0.0);
  return out;
}

MajorantSignal apply_chain(const std::vector<Majorant>& chain, MajorantSignal s) {
  for (const auto& m : chain) s = apply(m, s);
  return s;
}

Majorant first_order_front(double modulus, double gain) {
  return {modulus, gain, 0.0};
}

// |coefficients| of (w - conj(xi)) / (1 - xi w) are |xi|, then
// (1 - |xi|^2) |xi|^(d-1), which is the series of
// (|xi| + (1 - 2|xi|^2) w) / (1 - |xi| w).
Majorant allpass_majorant(double modulus) {
  return {modulus, modulus, 1.0 - 2.0 * modulus * modulus};
}

std::vector<Majorant> front_majorant(const Stage& stage, const Section& front) {
  const double r = stage.pole_moduli.front();
  if (stage.pole_moduli.size() == 1) {
    return {first_order_front(r, std::abs(front.num[0]))};
  }
  // (u + v w) / ((1 - xi w)(1 - conj(xi) w)) is dominated by
  // (|u| + |v| w) / (1 - |xi| w)^2.
  return {Majorant{r, 1.0, 0.0},
          Majorant{r, std::abs(front.num[0]), std::abs(front.num[1])}};
}

std::vector<Majorant> allpass_chain(const Stage& stage) {
  std::vector<Majorant> chain;
  for (double r : stage.pole_moduli) chain.push_back(allpass_majorant(r));
  return chain;
}

void filter(const Section& s, std::span<const cdouble> in, std::span<cdouble> out) {
  cdouble x1 = 0.0, x2 = 0.0, y1 = 0.0, y2 = 0.0;
  for (std::size_t d = 0; d < in.size(); ++d) {
    const cdouble x = in[d];
    const cdouble y = s.num[0] * x + s.num[1] * x1 + s.num[2] * x2 -
                      s.den[1] * y1 - s.den[2] * y2;
    out[d] = y;
    x2 = x1;
    x1 = x;
    y2 = y1;
    y1 = y;
  }
}

Stage first_order_stage(cdouble xi) {
  Stage st;
  Section front;
  front.num = {std::sqrt(1.0 - std::norm(xi)), 0.0, 0.0};
  front.den = {1.0, -xi, 0.0};
  st.fronts.push_back(front);
  st.allpass.num = {-std::conj(xi), 1.0, 0.0};
  st.allpass.den = {1.0, -xi, 0.0};
  st.pole_moduli = {std::abs(xi)};
  return st;
}

// Real orthonormal pair for the conjugate poles (xi, conj(xi)). With
// Q(w) = 1 + a1 w + a2 w^2, the functions 1/Q and w/Q have Gram matrix
// [[r0, r1], [r1, r0]] (the AR(2) autocovariances); a Cholesky step turns
// them into an orthonormal pair.
Stage conjugate_pair_stage(cdouble xi) {
  const double a1 = -2.0 * xi.real();
  const double a2 = std::norm(xi);
  const double r0 = (1.0 + a2) / ((1.0 - a2) * ((1.0 + a2) * (1.0 + a2) - a1 * a1));
  const double r1 = -a1 * r0 / (1.0 + a2);
  const double s = std::sqrt(r0 - r1 * r1 / r0);

  Stage st;
  Section g1;
  g1.num = {1.0 / std::sqrt(r0), 0.0, 0.0};
  g1.den = {1.0, a1, a2};
  Section g2;
  g2.num = {-(r1 / r0) / s, 1.0 / s, 0.0};
  g2.den = {1.0, a1, a2};
  st.fronts = {g1, g2};
  st.allpass.num = {a2, a1, 1.0};
  st.allpass.den = {1.0, a1, a2};
  st.pole_moduli = {std::abs(xi), std::abs(xi)};
  return st;
}

std::vector<cdouble> expand_poles(BasisKind kind, const PoleSequence& seq,
                                  std::size_t order) {
  const auto& p = seq.poles;
  auto cycled = [&](std::size_t count) {
    std::vector<cdouble> out(count);
    for (std::size_t i = 0; i < count; ++i) out[i] = p[i % p.size()];
    return out;
  };
  // One extra entry lets a trailing conjugate pair see its partner.
  const std::size_t want = order + 1;
  switch (kind) {
    case BasisKind::Fir:
      return std::vector<cdouble>(want, 0.0);
    case BasisKind::Laguerre: {
      if (p.empty()) {
        throw Error(ErrorCode::KindPoleMismatch, "Laguerre basis needs one real pole");
      }
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (!is_real(p[i]) || p[i] != p[0]) {
          throw Error(ErrorCode::KindPoleMismatch,
                      "Laguerre basis needs a single repeated real pole; got " +
                          format_pole(i, p[i]));
        }
      }
      return std::vector<cdouble>(want, p[0]);
    }
    case BasisKind::Kautz: {
      if (p.size() < 2 || p.size() % 2 != 0 || is_real(p[0])) {
        throw Error(ErrorCode::KindPoleMismatch,
                    "Kautz basis needs one repeated complex-conjugate pair");
      }
      for (std::size_t i = 0; i < p.size(); ++i) {
        const cdouble expect = (i % 2 == 0) ? p[0] : std::conj(p[0]);
        if (p[i] != expect) {
          throw Error(ErrorCode::KindPoleMismatch,
                      "Kautz basis needs one repeated complex-conjugate pair; got " +
                          format_pole(i, p[i]));
        }
      }
      return cycled(want);
    }
    case BasisKind::TakenakaMalmquist:
      if (p.empty()) {
        throw Error(ErrorCode::KindPoleMismatch,
                    "Takenaka-Malmquist basis needs at least one pole");
      }
      return cycled(want);
  }
  return {};
}

}  // namespace

std::string_view to_string(BasisKind kind) {
  switch (kind) {
    case BasisKind::Fir:
      return "fir";
    case BasisKind::Laguerre:
      return "laguerre";
    case BasisKind::Kautz:
      return "kautz";
    case BasisKind::TakenakaMalmquist:
      return "takenaka_malmquist";
  }
  return "unknown";
}

BasisKind basis_kind_from_string(std::string_view name) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (s == "fir") return BasisKind::Fir;
  if (s == "laguerre") return BasisKind::Laguerre;
  if (s == "kautz") return BasisKind::Kautz;
  if (s == "takenaka_malmquist" || s == "takenakamalmquist" || s == "tm" ||
      s == "gobf") {
    return BasisKind::TakenakaMalmquist;
  }
  throw Error(ErrorCode::ConfigError, "unknown basis kind '" + std::string(name) + "'");
}

void validate(const PoleSequence& seq) {
  for (std::size_t i = 0; i < seq.poles.size(); ++i) {
    const cdouble p = seq.poles[i];
    if (!std::isfinite(p.real()) || !std::isfinite(p.imag()) || !(std::abs(p) < 1.0)) {
      throw Error(ErrorCode::PoleOutsideDisk,
                  format_pole(i, p) + " is not strictly inside the unit disk");
    }
  }
  if (!seq.real_coefficients) return;
  // Conjugation closure of the multiset: match every pole with an unused
  // conjugate partner.
  std::vector<bool> used(seq.poles.size(), false);
  for (std::size_t i = 0; i < seq.poles.size(); ++i) {
    if (used[i]) continue;
    const cdouble target = std::conj(seq.poles[i]);
    used[i] = true;
    if (is_real(seq.poles[i])) continue;
    bool found = false;
    for (std::size_t j = i + 1; j < seq.poles.size(); ++j) {
      if (!used[j] && seq.poles[j] == target) {
        used[j] = true;
        found = true;
        break;
      }
    }
    if (!found) {
      throw Error(ErrorCode::KindPoleMismatch,
                  "real-coefficient mode requires conjugate-closed poles; " +
                      format_pole(i, seq.poles[i]) + " has no conjugate partner");
    }
  }
}

cdouble Section::operator()(cdouble w) const {
  const cdouble n = num[0] + w * (num[1] + w * num[2]);
  const cdouble d = den[0] + w * (den[1] + w * den[2]);
  if (std::abs(d) <= 1e-14 * (1.0 + std::norm(w))) {
    throw Error(ErrorCode::PoleOnGrid, "evaluation point coincides with a pole");
  }
  return n / d;
}

ImpulseTable::Column ImpulseTable::column(std::size_t k) const {
  const auto rows = static_cast<std::size_t>(coefficients.rows());
  return {std::span<const cdouble>(coefficients.data() + k * rows, rows), tail_bound};
}

OrfBasis::OrfBasis(BasisKind kind, PoleSequence poles, std::size_t order)
    : kind_(kind), poles_(std::move(poles)), order_(order) {
  if (order_ == 0) {
    throw Error(ErrorCode::InvalidArgument, "basis order must be at least 1");
  }
  if (kind_ != BasisKind::Fir) validate(poles_);
  // FIR and Laguerre are real whatever the flag says; Kautz defaults to the
  // complex form unless real coefficients are requested.
  real_ = poles_.real_coefficients || kind_ == BasisKind::Fir ||
          kind_ == BasisKind::Laguerre;

  const std::vector<cdouble> used = expand_poles(kind_, poles_, order_);
  std::size_t produced = 0;
  std::size_t i = 0;
  while (produced < order_) {
    const cdouble xi = used[i];
    if (real_ && !is_real(xi)) {
      if (used[i + 1] != std::conj(xi)) {
        throw Error(ErrorCode::KindPoleMismatch,
                    "real-coefficient mode requires each complex pole to be "
                    "followed by its conjugate; " +
                        format_pole(i, xi) + " is not");
      }
      Stage st = conjugate_pair_stage(xi);
      if (order_ - produced < 2) st.fronts.resize(1);
      produced += st.fronts.size();
      stages_.push_back(std::move(st));
      i += 2;
    } else {
      stages_.push_back(first_order_stage(xi));
      produced += 1;
      i += 1;
    }
    rho_ = std::max(rho_, std::abs(xi));
  }
}

void OrfBasis::evaluate_into(cdouble z, std::span<cdouble> out) const {
  if (z == cdouble(0.0)) {
    throw Error(ErrorCode::PoleOnGrid, "basis functions are undefined at z = 0");
  }
  const cdouble w = 1.0 / z;
  const std::size_t count = std::min(out.size(), order_);
  cdouble product = 1.0;
  std::size_t k = 0;
  for (const Stage& st : stages_) {
    for (const Section& front : st.fronts) {
      if (k == count) return;
      out[k++] = front(w) * product;
    }
    if (k == count) return;
    product *= st.allpass(w);
  }
}

std::vector<cdouble> OrfBasis::evaluate(cdouble z) const {
  std::vector<cdouble> out(order_);
  evaluate_into(z, out);
  return out;
}

double OrfBasis::tail_bound(std::size_t length) const {
  if (length == 0) {
    throw Error(ErrorCode::InvalidArgument, "truncation length must be at least 1");
  }
  MajorantSignal chain_in;
  chain_in.values.assign(length, 0.0);
  chain_in.values[0] = 1.0;
  double worst = 0.0;
  std::size_t k = 0;
  for (const Stage& st : stages_) {
    for (const Section& front : st.fronts) {
      if (k == order_) break;
      const MajorantSignal col = apply_chain(front_majorant(st, front), chain_in);
      worst = std::max(worst, col.tail);
      ++k;
    }
    if (k == order_) break;
    chain_in = apply_chain(allpass_chain(st), std::move(chain_in));
  }
  // Headroom for rounding in the recursions.
  return worst * (1.0 + 1e-9);
}

std::size_t OrfBasis::truncation_for(double target) const {
  std::size_t hi = 16;
  while (hi < kMaxTruncation && tail_bound(hi) > target) hi *= 2;
  hi = std::min(hi, kMaxTruncation);
  if (tail_bound(hi) > target) return hi;
  std::size_t lo = hi / 2;  // tail_bound(lo) > target unless hi == 16
  if (hi == 16) lo = 0;
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (tail_bound(mid) <= target) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

ImpulseTable OrfBasis::impulse_response(std::size_t length) const {
  if (length == 0) {
    throw Error(ErrorCode::InvalidArgument, "truncation length must be at least 1");
  }
  ImpulseTable table;
  table.coefficients.resize(static_cast<Eigen::Index>(length),
                            static_cast<Eigen::Index>(order_));
  table.length = length;
  table.real_valued = real_;

  std::vector<cdouble> chain(length, 0.0);
  std::vector<cdouble> next(length);
  chain[0] = 1.0;
  std::size_t k = 0;
  for (const Stage& st : stages_) {
    for (const Section& front : st.fronts) {
      if (k == order_) break;
      std::span<cdouble> col(table.coefficients.data() + k * length, length);
      filter(front, chain, col);
      ++k;
    }
    if (k == order_) break;
    filter(st.allpass, chain, next);
    chain.swap(next);
  }
  table.tail_bound = tail_bound(length);
  return table;
}

ImpulseTable OrfBasis::impulse_response_auto(double target) const {
  return impulse_response(truncation_for(target));
}

OrfBasis build_basis(BasisKind kind, const PoleSequence& poles, std::size_t order) {
  return OrfBasis(kind, poles, order);
}

}  // namespace orfcs
