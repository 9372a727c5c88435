// Copyright 2026 The orfcs Authors
// SPDX-License-Identifier: Apache-2.0

// AArch64 Advanced SIMD variant. One float64x2_t holds one complex value.

#include <arm_neon.h>

#include <algorithm>
#include <cmath>

#include "orfcs/kernels.hpp"

namespace orfcs::kernels::neon {
namespace {

inline const double* raw(const cdouble* p) {
  return reinterpret_cast<const double*>(p);
}

}  // namespace

cdouble dot_conj(const cdouble* a, const cdouble* b, std::size_t n) {
  float64x2_t prod0 = vdupq_n_f64(0.0), prod1 = vdupq_n_f64(0.0);
  float64x2_t cross0 = vdupq_n_f64(0.0), cross1 = vdupq_n_f64(0.0);
  const double* pa = raw(a);
  const double* pb = raw(b);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t a0 = vld1q_f64(pa + 2 * i);
    const float64x2_t b0 = vld1q_f64(pb + 2 * i);
    const float64x2_t a1 = vld1q_f64(pa + 2 * i + 2);
    const float64x2_t b1 = vld1q_f64(pb + 2 * i + 2);
    prod0 = vfmaq_f64(prod0, a0, b0);
    prod1 = vfmaq_f64(prod1, a1, b1);
    cross0 = vfmaq_f64(cross0, a0, vextq_f64(b0, b0, 1));
    cross1 = vfmaq_f64(cross1, a1, vextq_f64(b1, b1, 1));
  }
  const float64x2_t prod = vaddq_f64(prod0, prod1);
  const float64x2_t cross = vaddq_f64(cross0, cross1);
  double re = vgetq_lane_f64(prod, 0) + vgetq_lane_f64(prod, 1);
  double im = vgetq_lane_f64(cross, 1) - vgetq_lane_f64(cross, 0);
  for (; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    re += ar * br + ai * bi;
    im += ai * br - ar * bi;
  }
  return {re, im};
}

double dot(const double* a, const double* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0), acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
  }
  const float64x2_t acc = vaddq_f64(acc0, acc1);
  double s = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

double max_abs(const cdouble* a, std::size_t n) {
  const double* pa = raw(a);
  float64x2_t best = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t v0 = vld1q_f64(pa + 2 * i);
    const float64x2_t v1 = vld1q_f64(pa + 2 * i + 2);
    // pairwise add of squares gives [|a_i|^2, |a_{i+1}|^2]
    const float64x2_t m2 = vpaddq_f64(vmulq_f64(v0, v0), vmulq_f64(v1, v1));
    best = vmaxq_f64(best, m2);
  }
  double m = std::max(vgetq_lane_f64(best, 0), vgetq_lane_f64(best, 1));
  for (; i < n; ++i) {
    m = std::max(m, a[i].real() * a[i].real() + a[i].imag() * a[i].imag());
  }
  return std::sqrt(m);
}

double squared_norm(const cdouble* a, std::size_t n) {
  return dot(raw(a), raw(a), 2 * n);
}

}  // namespace orfcs::kernels::neon
