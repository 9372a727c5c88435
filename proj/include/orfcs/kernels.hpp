// Copyright 2026 The orfcs Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ORFCS_KERNELS_HPP_
#define ORFCS_KERNELS_HPP_

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

// Inner loops shared by the inner-product, Gram and coherence code. Each
// kernel has a scalar reference implementation and, where the platform has
// one, a vector variant. The variant is picked once at startup from the CPU
// features and may be overridden with ORFCS_ISA=scalar|avx2|neon or
// kernels::select().

namespace orfcs::kernels {

using cdouble = std::complex<double>;

enum class Isa { Scalar, Avx2, Neon };

std::string_view to_string(Isa isa);

/// True when the running CPU can execute the given variant.
bool supported(Isa isa);

/// The variant currently used by the dispatching entry points below.
Isa active();

/// Forces a variant. Returns false (and changes nothing) when unsupported.
bool select(Isa isa);

/// sum_i a[i] * conj(b[i]) over the common prefix of a and b.
cdouble dot_conj(std::span<const cdouble> a, std::span<const cdouble> b);

/// sum_i a[i] * b[i] over the common prefix of two real arrays.
double dot(std::span<const double> a, std::span<const double> b);

/// max_i |a[i]|, 0 for an empty span.
double max_abs(std::span<const cdouble> a);

/// sum_i |a[i]|^2.
double squared_norm(std::span<const cdouble> a);

// Per-variant entry points, exposed for equivalence testing. Calling a vector
// variant on a CPU that lacks it is undefined.
namespace scalar {
cdouble dot_conj(const cdouble* a, const cdouble* b, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
double max_abs(const cdouble* a, std::size_t n);
double squared_norm(const cdouble* a, std::size_t n);
}  // namespace scalar

namespace avx2 {
cdouble dot_conj(const cdouble* a, const cdouble* b, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
double max_abs(const cdouble* a, std::size_t n);
double squared_norm(const cdouble* a, std::size_t n);
}  // namespace avx2

namespace neon {
cdouble dot_conj(const cdouble* a, const cdouble* b, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
double max_abs(const cdouble* a, std::size_t n);
double squared_norm(const cdouble* a, std::size_t n);
}  // namespace neon

}  // namespace orfcs::kernels

#endif  // ORFCS_KERNELS_HPP_
