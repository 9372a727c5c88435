// Copyright 2026 The orfcs Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "orfcs/error.hpp"
#include "orfcs/sampling.hpp"

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

TEST_SUITE("sampling") {
  TEST_CASE("grid points are the N-th roots of unity") {
    const auto g = orfcs::grid(12);
    CHECK(g.points.size() == 12);
    CHECK(g.points[0] == cdouble(1.0, 0.0));
    CHECK(g.points[3] == cdouble(0.0, 1.0));
    CHECK(g.points[6] == cdouble(-1.0, 0.0));
    CHECK(g.points[9] == cdouble(0.0, -1.0));
    for (const cdouble& z : g.points) CHECK(std::abs(std::abs(z) - 1.0) <= 1e-15);
    for (std::size_t r = 1; r < 12; ++r) {
      CHECK(std::abs(g.points[r] - g.points[r - 1] * g.points[1]) <= 1e-15);
    }
    CHECK_THROWS_AS(orfcs::grid(0), orfcs::Error);
  }

  TEST_CASE("FIR columns are exactly orthonormal for N >= n") {
    for (std::size_t n : {8u, 9u, 16u, 64u}) {
      const auto dict = orfcs::assemble(fir(8), fir(8), 8, 8, orfcs::grid(n));
      const auto rep = orfcs::orthonormality_report(dict);
      CHECK(rep.dev1 == 0.0);
      CHECK(rep.dev2 == 0.0);
    }
    // N = 4 folds the delays 0 and 4 onto each other.
    const auto folded = orfcs::assemble(fir(8), nullptr, 8, 0, orfcs::grid(4));
    CHECK(orfcs::orthonormality_report(folded).dev1 == doctest::Approx(1.0));
  }

  TEST_CASE("Laguerre orthonormality on a fine grid") {
    const auto dict = orfcs::assemble(fir(8), laguerre(0.5, 8), 8, 8, orfcs::grid(256));
    const auto rep = orfcs::orthonormality_report(dict);
    CHECK(rep.dev2 <= 1e-8);
    CHECK(rep.cross_dev <= 1e-8);
    // A coarse grid aliases the slowly decaying tail.
    const auto coarse = orfcs::assemble(fir(8), laguerre(0.9, 8), 8, 8, orfcs::grid(16));
    CHECK(orfcs::orthonormality_report(coarse).dev2 > 1e-3);
  }

  TEST_CASE("folded Gram deviation matches the Gram of the sampled values") {
    // Oracle: the Gram matrix summed directly over the stored samples.
    for (std::size_t n : {8u, 16u, 32u, 256u}) {
      const auto dict = orfcs::assemble(fir(4), laguerre(0.9, 4), 4, 4, orfcs::grid(n));
      const Eigen::MatrixXcd psi = dict.values().rightCols(4);
      Eigen::MatrixXcd g = psi.adjoint() * psi / static_cast<double>(n);
      g -= Eigen::MatrixXcd::Identity(4, 4);
      CHECK(std::abs(orfcs::orthonormality_report(dict).dev2 - g.cwiseAbs().maxCoeff()) <= 1e-12);
    }
  }

  TEST_CASE("dictionary layout and row restriction") {
    const auto dict = orfcs::assemble(fir(3), laguerre(0.2, 2), 3, 2, orfcs::grid(10));
    CHECK(dict.rows() == 10);
    CHECK(dict.columns() == 5);
    const std::vector<std::size_t> omega{7, 2};
    const auto a = dict.restrict_rows(omega);
    CHECK(a.rows() == 2);
    CHECK(a(0, 4) == dict.values()(7, 4));
    CHECK(a(1, 1) == dict.values()(2, 1));
    const std::vector<std::size_t> bad{10};
    CHECK_THROWS_AS(dict.restrict_rows(bad), orfcs::Error);
    CHECK_THROWS_AS(orfcs::assemble(fir(3), laguerre(0.2, 2), 4, 2, orfcs::grid(10)),
                    orfcs::Error);
  }

  TEST_CASE("uniform subsets") {
    orfcs::MeasurementPlan plan;
    plan.m = 17;
    plan.seed = 99;
    const auto omega = orfcs::draw_omega(plan, 64);
    CHECK(omega.size() == 17);
    CHECK(std::is_sorted(omega.begin(), omega.end()));
    CHECK(std::set<std::size_t>(omega.begin(), omega.end()).size() == 17);
    CHECK(omega.back() < 64);
    CHECK(orfcs::draw_omega(plan, 64) == omega);
    plan.seed = 100;
    CHECK(orfcs::draw_omega(plan, 64) != omega);
    plan.m = 64;
    CHECK(orfcs::draw_omega(plan, 64).size() == 64);
  }

  TEST_CASE("uniform subsets cover rows evenly") {
    std::vector<int> hits(16, 0);
    orfcs::MeasurementPlan plan;
    plan.m = 4;
    for (std::uint64_t s = 0; s < 4000; ++s) {
      plan.seed = s;
      for (std::size_t r : orfcs::draw_omega(plan, 16)) ++hits[r];
    }
    // Expected 1000 hits per row; 5 sigma is about 140.
    for (int h : hits) CHECK(std::abs(h - 1000) < 150);
  }

  TEST_CASE("Bernoulli rows") {
    orfcs::MeasurementPlan plan;
    plan.model = orfcs::SamplingModel::Bernoulli;
    plan.m = 64;
    CHECK(orfcs::draw_omega(plan, 64).size() == 64);
    plan.m = 32;
    double total = 0.0;
    for (std::uint64_t s = 0; s < 200; ++s) {
      plan.seed = s;
      total += static_cast<double>(orfcs::draw_omega(plan, 64).size());
    }
    CHECK(total / 200.0 == doctest::Approx(32.0).epsilon(0.05));
  }

  TEST_CASE("measurement-count validation") {
    orfcs::MeasurementPlan plan;
    plan.m = 0;
    try {
      orfcs::draw_omega(plan, 8);
      FAIL("expected MOutOfRange");
    } catch (const orfcs::Error& e) {
      CHECK(e.code() == orfcs::ErrorCode::MOutOfRange);
    }
    plan.m = 9;
    CHECK_THROWS_AS(orfcs::draw_omega(plan, 8), orfcs::Error);
    CHECK(orfcs::sampling_model_from_string("bernoulli") == orfcs::SamplingModel::Bernoulli);
    CHECK_THROWS_AS(orfcs::sampling_model_from_string("poisson"), orfcs::Error);
  }

  TEST_CASE("measure") {
    const auto dict = orfcs::assemble(fir(4), laguerre(0.4, 4), 4, 4, orfcs::grid(16));
    Eigen::VectorXd theta = Eigen::VectorXd::Zero(8);
    theta(1) = 2.0;
    theta(6) = -0.5;
    const std::vector<std::size_t> omega{0, 5, 11};
    const auto h = orfcs::measure(dict, theta, omega);
    for (int i = 0; i < 3; ++i) {
      const auto r = static_cast<Eigen::Index>(omega[static_cast<std::size_t>(i)]);
      CHECK(std::abs(h(i) - (2.0 * dict.values()(r, 1) - 0.5 * dict.values()(r, 6))) <= 1e-15);
    }
    CHECK_THROWS_AS(orfcs::measure(dict, Eigen::VectorXd::Zero(7), omega), orfcs::Error);
  }

  TEST_CASE("dictionary CSV") {
    const auto dict = orfcs::assemble(fir(1), fir(1), 1, 1, orfcs::grid(4));
    std::ostringstream os;
    orfcs::write_dictionary_csv(dict, os);
    const std::string s = os.str();
    CHECK(s.rfind("r,re_1,im_1,re_2,im_2\n1,1,0,1,0\n", 0) == 0);
    CHECK(std::count(s.begin(), s.end(), '\n') == 5);
  }
}
