// Copyright 2026 The orfcs Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <memory>

#include "orfcs/error.hpp"
#include "orfcs/hardy_space.hpp"
#include "orfcs/sampling.hpp"
#include "series_oracle.hpp"

namespace {

using orfcs::BasisKind;
using orfcs::cdouble;
using orfcs::OrfBasis;
using orfcs::PoleSequence;

std::shared_ptr<const OrfBasis> fir(std::size_t n) {
  return std::make_shared<const OrfBasis>(BasisKind::Fir, PoleSequence{}, n);
}

std::shared_ptr<const OrfBasis> laguerre(double a, std::size_t n) {
  return std::make_shared<const OrfBasis>(BasisKind::Laguerre, PoleSequence{{a}, true}, n);
}

}  // namespace

TEST_SUITE("hardy_space") {
  TEST_CASE("FIR against Laguerre 0.5: coherence sqrt(0.75) at (1, 1)") {
    const auto r = orfcs::mutual_coherence(*fir(8), *laguerre(0.5, 8), 8, 8);
    CHECK(r.mu == doctest::Approx(std::sqrt(0.75)).epsilon(1e-12));
    CHECK(r.argmax.first == 1);
    CHECK(r.argmax.second == 1);
    CHECK(r.tail_error <= 1e-11);

    // Oracle: truncated scan over series coefficients at D = 512.
    const auto lag = oracle::takenaka(std::vector<oracle::cd>(8, 0.5), 8, 512);
    double mu = 0.0;
    for (std::size_t k = 0; k < 8; ++k) {
      for (std::size_t l = 0; l < 8; ++l) mu = std::max(mu, std::abs(lag[l][k]));
    }
    CHECK(std::abs(r.mu - mu) <= 1e-12);
  }

  TEST_CASE("frequency and impulse inner products agree") {
    const auto a = fir(8);
    const auto b = laguerre(0.9, 8);
    const auto dict = orfcs::assemble(a, b, 8, 8, orfcs::grid(512));
    const auto ta = a->impulse_response_auto();
    const auto tb = b->impulse_response_auto();
    for (std::size_t k = 0; k < 8; ++k) {
      for (std::size_t l = 0; l < 8; ++l) {
        const cdouble f = orfcs::inner_product_freq(dict.column(k), dict.column(8 + l), 512);
        const auto ip = orfcs::inner_product_impulse(ta.column(k), tb.column(l));
        CHECK(std::abs(f - ip.value) <= 1e-8);
      }
    }
  }

  TEST_CASE("impulse error bound covers a longer truncation") {
    const auto a = laguerre(0.8, 4);
    const auto b = laguerre(-0.6, 4);
    const auto short_a = a->impulse_response(30);
    const auto short_b = b->impulse_response(25);
    const auto long_a = a->impulse_response(2000);
    const auto long_b = b->impulse_response(2000);
    for (std::size_t k = 0; k < 4; ++k) {
      for (std::size_t l = 0; l < 4; ++l) {
        const auto approx = orfcs::inner_product_impulse(short_a.column(k), short_b.column(l));
        const auto exact = orfcs::inner_product_impulse(long_a.column(k), long_b.column(l));
        CHECK(std::abs(approx.value - exact.value) <= approx.error_bound);
      }
    }
  }

  TEST_CASE("identical bases have coherence one") {
    const auto r = orfcs::mutual_coherence(*laguerre(0.3, 5), *laguerre(0.3, 5), 5, 5);
    CHECK(r.mu == doctest::Approx(1.0).epsilon(1e-12));
    const auto dict = orfcs::assemble(fir(4), fir(4), 4, 4, orfcs::grid(16));
    CHECK(orfcs::matrix_coherences(dict).mu_matrix == doctest::Approx(1.0).epsilon(1e-14));
  }

  TEST_CASE("matrix coherences on the full grid") {
    const auto dict = orfcs::assemble(fir(8), laguerre(0.5, 8), 8, 8, orfcs::grid(256));
    const auto mc = orfcs::matrix_coherences(dict);
    CHECK(mc.mu_matrix == doctest::Approx(std::sqrt(0.75)).epsilon(1e-10));
    CHECK(mc.mu_phi == doctest::Approx(1.0).epsilon(1e-12));
    // |L_1(-1)| sqrt(N) / ||L_1|| = sqrt(1 - a^2) / (1 - a) = sqrt(3)
    CHECK(mc.mu_psi == doctest::Approx(std::sqrt(3.0)).epsilon(1e-10));
    CHECK(mc.mu_m == mc.mu_psi);
  }

  TEST_CASE("cross block norm") {
    const auto dict = orfcs::assemble(fir(6), laguerre(0.7, 6), 6, 6, orfcs::grid(128));
    const std::vector<std::size_t> one{0};
    const double single = orfcs::cross_block_norm(dict, one, one);
    CHECK(single == doctest::Approx(std::sqrt(1.0 - 0.49)).epsilon(1e-10));

    const std::vector<std::size_t> t1{0, 2}, t2{1, 3, 4};
    Eigen::MatrixXcd x(2, 3);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 3; ++j) {
        x(i, j) = dict.values().col(static_cast<Eigen::Index>(t1[i])).dot(
                      dict.values().col(static_cast<Eigen::Index>(6 + t2[j]))) /
                  128.0;
      }
    }
    const Eigen::MatrixXcd xx = x * x.adjoint();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(xx);
    const double ref = std::sqrt(eig.eigenvalues().maxCoeff());
    CHECK(orfcs::cross_block_norm(dict, t1, t2) == doctest::Approx(ref).epsilon(1e-12));
    CHECK(orfcs::cross_block_norm(dict, {}, t2) == 0.0);
    const std::vector<std::size_t> bad{6};
    CHECK_THROWS_AS(orfcs::cross_block_norm(dict, bad, t2), orfcs::Error);
  }

  TEST_CASE("errors") {
    std::vector<cdouble> f(8), g(7);
    CHECK_THROWS_AS(orfcs::inner_product_freq(f, g, 8), orfcs::Error);
    CHECK_THROWS_AS(orfcs::inner_product_freq(f, f, 9), orfcs::Error);
    CHECK_THROWS_AS(orfcs::mutual_coherence(*fir(4), *fir(4), 5, 2), orfcs::Error);
    CHECK_THROWS_AS(orfcs::mutual_coherence(*fir(4), *fir(4), 0, 2), orfcs::Error);
    const auto half = orfcs::assemble(fir(4), nullptr, 4, 0, orfcs::grid(8));
    try {
      orfcs::matrix_coherences(half);
      FAIL("expected EmptyDictionary");
    } catch (const orfcs::Error& e) {
      CHECK(e.code() == orfcs::ErrorCode::EmptyDictionary);
    }
  }
}
