// Copyright 2026 The orfcs Authors
// SPDX-License-Identifier: Apache-2.0

// Compiled with -mavx2 -mfma. Only reached through the dispatcher after a
// CPUID check.

#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "orfcs/kernels.hpp"

namespace orfcs::kernels::avx2 {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline const double* raw(const cdouble* p) {
  return reinterpret_cast<const double*>(p);
}

}  // namespace

cdouble dot_conj(const cdouble* a, const cdouble* b, std::size_t n) {
  // Lanes hold [re0, im0, re1, im1]. prod accumulates a*b elementwise (its
  // lane sum is the real part); cross accumulates a*swap(b), whose odd minus
  // even lanes give the imaginary part ai*br - ar*bi.
  __m256d prod0 = _mm256_setzero_pd(), prod1 = _mm256_setzero_pd();
  __m256d cross0 = _mm256_setzero_pd(), cross1 = _mm256_setzero_pd();
  const double* pa = raw(a);
  const double* pb = raw(b);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d a0 = _mm256_loadu_pd(pa + 2 * i);
    const __m256d b0 = _mm256_loadu_pd(pb + 2 * i);
    const __m256d a1 = _mm256_loadu_pd(pa + 2 * i + 4);
    const __m256d b1 = _mm256_loadu_pd(pb + 2 * i + 4);
    prod0 = _mm256_fmadd_pd(a0, b0, prod0);
    prod1 = _mm256_fmadd_pd(a1, b1, prod1);
    cross0 = _mm256_fmadd_pd(a0, _mm256_permute_pd(b0, 0b0101), cross0);
    cross1 = _mm256_fmadd_pd(a1, _mm256_permute_pd(b1, 0b0101), cross1);
  }
  for (; i + 2 <= n; i += 2) {
    const __m256d a0 = _mm256_loadu_pd(pa + 2 * i);
    const __m256d b0 = _mm256_loadu_pd(pb + 2 * i);
    prod0 = _mm256_fmadd_pd(a0, b0, prod0);
    cross0 = _mm256_fmadd_pd(a0, _mm256_permute_pd(b0, 0b0101), cross0);
  }
  const __m256d prod = _mm256_add_pd(prod0, prod1);
  const __m256d cross = _mm256_add_pd(cross0, cross1);
  alignas(32) double c[4];
  _mm256_store_pd(c, cross);
  double re = hsum(prod);
  double im = (c[1] - c[0]) + (c[3] - c[2]);
  for (; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    re += ar * br + ai * bi;
    im += ai * br - ar * bi;
  }
  return {re, im};
}

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4),
                           acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double max_abs(const cdouble* a, std::size_t n) {
  __m256d best = _mm256_setzero_pd();
  const double* pa = raw(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = _mm256_loadu_pd(pa + 2 * i);
    const __m256d sq = _mm256_mul_pd(v, v);
    // [re0^2+im0^2, same, re1^2+im1^2, same]
    const __m256d m2 = _mm256_add_pd(sq, _mm256_permute_pd(sq, 0b0101));
    best = _mm256_max_pd(best, m2);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, best);
  double m = std::max(lanes[0], lanes[2]);
  for (; i < n; ++i) {
    m = std::max(m, a[i].real() * a[i].real() + a[i].imag() * a[i].imag());
  }
  return std::sqrt(m);
}

double squared_norm(const cdouble* a, std::size_t n) {
  // A complex array of length n is a real array of length 2n.
  return dot(raw(a), raw(a), 2 * n);
}

}  // namespace orfcs::kernels::avx2
