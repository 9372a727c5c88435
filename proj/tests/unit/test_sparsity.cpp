// Copyright 2026 The orfcs Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "orfcs/error.hpp"
#include "orfcs/rng.hpp"
#include "orfcs/sparsity.hpp"

namespace {

using orfcs::CoefficientVector;

// Brute-force cut-off straight from the definition.
std::size_t n_eps_reference(const std::vector<double>& v, double tail, double eps) {
  for (std::size_t k = 1; k <= v.size() + 1; ++k) {
    double s = tail;
    for (std::size_t i = k - 1; i < v.size(); ++i) s += std::abs(v[i]);
    if (s <= eps) return k;
  }
  return v.size() + 1;
}

}  // namespace

TEST_SUITE("sparsity") {
  TEST_CASE("geometric sequence") {
    CoefficientVector a;
    for (int k = 1; k <= 20; ++k) a.values.push_back(std::pow(2.0, 1 - k));
    const auto s = orfcs::summarize(a, 0.1);
    CHECK(s.n_epsilon == 6);
    CHECK(s.eps_zero_norm == 5);
    CHECK(s.support == std::vector<std::size_t>{1, 2, 3, 4, 5});
  }

  TEST_CASE("exact zeros are not counted") {
    CoefficientVector a{{1.0, 0.0, -2.0, 0.0, 0.05}, 0.0};
    const auto s = orfcs::summarize(a, 0.1);
    // The zero at position 4 lets the cut-off move in front of it.
    CHECK(s.n_epsilon == 4);
    CHECK(s.support == std::vector<std::size_t>{1, 3});
    CHECK(orfcs::summarize(a, 0.0).eps_zero_norm == 3);
    CHECK(orfcs::summarize(a, 100.0).eps_zero_norm == 0);
    CHECK(orfcs::summarize(a, 100.0).n_epsilon == 1);
  }

  TEST_CASE("cut-off matches the definition on random sequences") {
    orfcs::Rng rng(3);
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<double> v(1 + rng.below(12));
      for (double& x : v) x = rng.uniform() < 0.3 ? 0.0 : rng.uniform(-1.0, 1.0);
      const double tail = rng.uniform() < 0.5 ? 0.0 : rng.uniform(0.0, 0.05);
      const double eps = tail + rng.uniform(1e-6, 1.5);
      const auto s = orfcs::summarize(CoefficientVector{v, tail}, eps);
      CHECK(s.n_epsilon == n_eps_reference(v, tail, eps));
      std::size_t count = 0;
      for (std::size_t i = 0; i + 1 < s.n_epsilon; ++i) count += v[i] != 0.0;
      CHECK(s.eps_zero_norm == count);
      // Monotone in epsilon.
      CHECK(orfcs::summarize(CoefficientVector{v, tail}, eps * 2.0).eps_zero_norm <= count);
    }
  }

  TEST_CASE("declared tail must stay below epsilon") {
    CoefficientVector a{{1.0, 0.5}, 0.2};
    try {
      orfcs::summarize(a, 0.2);
      FAIL("expected TailDominates");
    } catch (const orfcs::Error& e) {
      CHECK(e.code() == orfcs::ErrorCode::TailDominates);
    }
    CHECK(orfcs::summarize(a, 0.3).n_epsilon == 3);
    CHECK_THROWS_AS(orfcs::summarize(a, -1.0), orfcs::Error);
  }

  TEST_CASE("pair sparsity") {
    CoefficientVector a{{1.0, 0.0, 1.0}, 0.0};
    CoefficientVector b{{0.0, 2.0}, 0.0};
    CHECK(orfcs::is_pair_sparse(a, b, 0.01, 3));
    CHECK_FALSE(orfcs::is_pair_sparse(a, b, 0.01, 2));
  }

  TEST_CASE("uncertainty inequality") {
    const double mu = std::sqrt(0.75);
    // One function of each basis: 2 (1 + eps)^2 against 2 / mu = 2.309.
    CHECK_FALSE(orfcs::check_uncertainty(1, 1, mu, 0.0).holds);
    const auto c = orfcs::check_uncertainty(1, 2, mu, 0.0);
    CHECK(c.lhs == doctest::Approx(3.0));
    CHECK(c.rhs == doctest::Approx(2.0 / mu));
    CHECK(c.holds);
    // Equality holds to within the tolerance.
    CHECK(orfcs::check_uncertainty(1, 1, 1.0, 0.0).holds);
    CHECK(orfcs::uncertainty_lhs(4, 9, 0.5) == doctest::Approx(6.25 + 12.25));
  }

  TEST_CASE("uniqueness bound") {
    const double mu = 0.436;
    const auto u = orfcs::check_uniqueness(1, 1, mu, 0.0);
    CHECK(u.lhs == doctest::Approx(2.0));
    CHECK(u.rhs == doctest::Approx(1.0 / mu));
    CHECK(u.unique_guaranteed);
    CHECK_FALSE(orfcs::check_uniqueness(2, 1, mu, 0.0).unique_guaranteed);
    CoefficientVector a{{1.0}, 0.0}, b{{0.0, 1.0}, 0.0};
    CHECK(orfcs::check_uniqueness(a, b, mu, 0.0).unique_guaranteed);
  }

  TEST_CASE("coherence must be positive") {
    for (double mu : {0.0, -0.5}) {
      try {
        orfcs::check_uncertainty(1, 1, mu, 0.0);
        FAIL("expected NonpositiveMu");
      } catch (const orfcs::Error& e) {
        CHECK(e.code() == orfcs::ErrorCode::NonpositiveMu);
      }
    }
    CHECK_THROWS_AS(orfcs::check_uniqueness(1, 1, 0.0, 0.0), orfcs::Error);
  }
}
