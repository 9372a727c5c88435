// Copyright 2026 The orfcs Authors
// SPDX-License-Identifier: Apache-2.0

#include <atomic>
#include <cstdlib>
#include <string>

#include "orfcs/kernels.hpp"

#if !defined(ORFCS_HAVE_AVX2)
#define ORFCS_HAVE_AVX2 0
#endif
#if !defined(ORFCS_HAVE_NEON)
#define ORFCS_HAVE_NEON 0
#endif

namespace orfcs::kernels {

// Variants that were not compiled for this target forward to the scalar
// reference so the symbols always exist; supported() keeps them unselected.
#if !ORFCS_HAVE_AVX2
namespace avx2 {
cdouble dot_conj(const cdouble* a, const cdouble* b, std::size_t n) {
  return scalar::dot_conj(a, b, n);
}
double dot(const double* a, const double* b, std::size_t n) {
  return scalar::dot(a, b, n);
}
double max_abs(const cdouble* a, std::size_t n) { return scalar::max_abs(a, n); }
double squared_norm(const cdouble* a, std::size_t n) {
  return scalar::squared_norm(a, n);
}
}  // namespace avx2
#endif

#if !ORFCS_HAVE_NEON
namespace neon {
cdouble dot_conj(const cdouble* a, const cdouble* b, std::size_t n) {
  return scalar::dot_conj(a, b, n);
}
double dot(const double* a, const double* b, std::size_t n) {
  return scalar::dot(a, b, n);
}
double max_abs(const cdouble* a, std::size_t n) { return scalar::max_abs(a, n); }
double squared_norm(const cdouble* a, std::size_t n) {
  return scalar::squared_norm(a, n);
}
}  // namespace neon
#endif

namespace {

struct Table {
  cdouble (*dot_conj)(const cdouble*, const cdouble*, std::size_t);
  double (*dot)(const double*, const double*, std::size_t);
  double (*max_abs)(const cdouble*, std::size_t);
  double (*squared_norm)(const cdouble*, std::size_t);
};

constexpr Table kScalar{scalar::dot_conj, scalar::dot, scalar::max_abs,
                        scalar::squared_norm};
constexpr Table kAvx2{avx2::dot_conj, avx2::dot, avx2::max_abs,
                      avx2::squared_norm};
constexpr Table kNeon{neon::dot_conj, neon::dot, neon::max_abs,
                      neon::squared_norm};

const Table& table_for(Isa isa) {
  switch (isa) {
    case Isa::Avx2:
      return kAvx2;
    case Isa::Neon:
      return kNeon;
    case Isa::Scalar:
      break;
  }
  return kScalar;
}

Isa detect() {
  if (const char* env = std::getenv("ORFCS_ISA")) {
    const std::string want(env);
    if (want == "scalar") return Isa::Scalar;
    if (want == "avx2" && supported(Isa::Avx2)) return Isa::Avx2;
    if (want == "neon" && supported(Isa::Neon)) return Isa::Neon;
  }
  if (supported(Isa::Avx2)) return Isa::Avx2;
  if (supported(Isa::Neon)) return Isa::Neon;
  return Isa::Scalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
    case Isa::Neon:
      return "neon";
  }
  return "unknown";
}

bool supported(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if ORFCS_HAVE_AVX2 && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::Neon:
      return ORFCS_HAVE_NEON != 0;
  }
  return false;
}

Isa active() { return current().load(std::memory_order_relaxed); }

bool select(Isa isa) {
  if (!supported(isa)) return false;
  current().store(isa, std::memory_order_relaxed);
  return true;
}

cdouble dot_conj(std::span<const cdouble> a, std::span<const cdouble> b) {
  return table_for(active()).dot_conj(a.data(), b.data(),
                                      std::min(a.size(), b.size()));
}

double dot(std::span<const double> a, std::span<const double> b) {
  return table_for(active()).dot(a.data(), b.data(), std::min(a.size(), b.size()));
}

double max_abs(std::span<const cdouble> a) {
  return table_for(active()).max_abs(a.data(), a.size());
}

double squared_norm(std::span<const cdouble> a) {
  return table_for(active()).squared_norm(a.data(), a.size());
}

}  // namespace orfcs::kernels
