// Copyright 2026 The orfcs Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <vector>

#include "orfcs/kernels.hpp"
#include "orfcs/rng.hpp"

namespace {

using orfcs::kernels::cdouble;
namespace k = orfcs::kernels;

std::vector<cdouble> random_complex(std::size_t n, std::uint64_t seed) {
  orfcs::Rng rng(seed);
  std::vector<cdouble> v(n);
  for (auto& x : v) x = {rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
  return v;
}

// Sums with O(n eps) rounding differences between variants.
void check_close(cdouble a, cdouble b, double scale) {
  CHECK(std::abs(a - b) <= 1e-13 * (1.0 + scale));
}

struct IsaGuard {
  orfcs::kernels::Isa saved = k::active();
  ~IsaGuard() { k::select(saved); }
};

}  // namespace

TEST_SUITE("kernels") {
  TEST_CASE("scalar reference against a naive loop") {
    const auto a = random_complex(37, 1);
    const auto b = random_complex(37, 2);
    cdouble ref = 0.0;
    double mx = 0.0;
    double sq = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      ref += a[i] * std::conj(b[i]);
      mx = std::max(mx, std::abs(a[i]));
      sq += std::norm(a[i]);
    }
    check_close(k::scalar::dot_conj(a.data(), b.data(), a.size()), ref, 37.0);
    CHECK(k::scalar::max_abs(a.data(), a.size()) == doctest::Approx(mx).epsilon(1e-15));
    CHECK(k::scalar::squared_norm(a.data(), a.size()) == doctest::Approx(sq).epsilon(1e-14));
  }

  TEST_CASE("empty and mismatched spans") {
    const auto a = random_complex(5, 3);
    const auto b = random_complex(3, 4);
    CHECK(k::dot_conj({}, {}) == cdouble(0.0));
    CHECK(k::max_abs({}) == 0.0);
    // Common prefix only.
    check_close(k::dot_conj(a, b), k::scalar::dot_conj(a.data(), b.data(), 3), 3.0);
  }

  TEST_CASE("AVX2 variant matches scalar for every tail length") {
    if (!k::supported(k::Isa::Avx2)) {
      MESSAGE("AVX2 not available; skipped");
      return;
    }
    for (std::size_t n = 0; n <= 67; ++n) {
      const auto a = random_complex(n, 100 + n);
      const auto b = random_complex(n, 200 + n);
      const double scale = static_cast<double>(n) * 4.0;
      check_close(k::avx2::dot_conj(a.data(), b.data(), n),
                  k::scalar::dot_conj(a.data(), b.data(), n), scale);
      CHECK(k::avx2::max_abs(a.data(), n) == k::scalar::max_abs(a.data(), n));
      CHECK(std::abs(k::avx2::squared_norm(a.data(), n) - k::scalar::squared_norm(a.data(), n)) <=
            1e-13 * (1.0 + scale));
      std::vector<double> ra(n), rb(n);
      for (std::size_t i = 0; i < n; ++i) {
        ra[i] = a[i].real();
        rb[i] = b[i].imag();
      }
      CHECK(std::abs(k::avx2::dot(ra.data(), rb.data(), n) -
                     k::scalar::dot(ra.data(), rb.data(), n)) <= 1e-13 * (1.0 + scale));
    }
  }

  TEST_CASE("NEON variant matches scalar") {
    if (!k::supported(k::Isa::Neon)) {
      MESSAGE("NEON not available; skipped");
      return;
    }
    for (std::size_t n = 0; n <= 33; ++n) {
      const auto a = random_complex(n, 300 + n);
      const auto b = random_complex(n, 400 + n);
      check_close(k::neon::dot_conj(a.data(), b.data(), n),
                  k::scalar::dot_conj(a.data(), b.data(), n), 4.0 * static_cast<double>(n));
      CHECK(k::neon::max_abs(a.data(), n) == k::scalar::max_abs(a.data(), n));
    }
  }

  TEST_CASE("runtime selection") {
    IsaGuard guard;
    CHECK(k::supported(k::Isa::Scalar));
    CHECK(k::select(k::Isa::Scalar));
    CHECK(k::active() == k::Isa::Scalar);
    const auto a = random_complex(19, 5);
    const cdouble s = k::dot_conj(a, a);
    if (k::select(k::Isa::Avx2)) {
      CHECK(k::active() == k::Isa::Avx2);
      check_close(k::dot_conj(a, a), s, 19.0);
    }
    if (!k::supported(k::Isa::Neon)) {
      const auto before = k::active();
      CHECK_FALSE(k::select(k::Isa::Neon));
      CHECK(k::active() == before);
    }
    CHECK(k::to_string(k::Isa::Scalar) == "scalar");
  }
}
