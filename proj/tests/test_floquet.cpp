// Copyright 2026 The bichrom Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "bichrom/floquet.hpp"
#include "bichrom/hermitian_eigen.hpp"
#include "oracles.hpp"

using namespace bichrom;

namespace {

DriveParams drive(double o1, double o2, double d1, double d2) {
  DriveParams p;
  p.omega1 = o1;
  p.omega2 = o2;
  p.delta1 = d1;
  p.delta2 = d2;
  return p;
}

double zone_distance(double a, double b, double zone) {
  return std::abs(oracle::fold(a - b, zone));
}

}  // namespace

TEST_CASE("Floquet matrix layout") {
  const auto p = drive(30, 12, 4, 37);
  const double D = p.beat();
  const auto h = floquet_matrix(p, FloquetConfig{1});
  REQUIRE(h.rows() == 6);
  Eigen::MatrixXd want(6, 6);
  // Explicit N = 1 matrix, times 2.
  want << 2 * (4 + D), 30, 0, 0, 0, 0,
          30, 2 * D, 12, 0, 0, 0,
          0, 12, 2 * 4, 30, 0, 0,
          0, 0, 30, 0, 12, 0,
          0, 0, 0, 12, 2 * (4 - D), 30,
          0, 0, 0, 0, 30, -2 * D;
  CHECK((2.0 * h - want.cast<Complex>()).norm() < 1e-13);
  CHECK((h - h.adjoint()).norm() == 0.0);

  auto with_phase = p;
  with_phase.phi = 0.7;
  const auto hp = floquet_matrix(with_phase, FloquetConfig{4});
  CHECK((hp - hp.adjoint()).norm() == 0.0);
  CHECK(hp.rows() == 18);
  CHECK_THROWS_AS(floquet_matrix(p, FloquetConfig{51}), DomainError);

  const auto hf = floquet_matrix<float>(p, FloquetConfig{2});
  CHECK(hf.rows() == 10);
}

TEST_CASE("Hermitian eigensolver against Eigen") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  for (int n : {1, 2, 5, 18, 42}) {
    Eigen::MatrixXcd a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = Complex(g(rng), g(rng));
    a = (a + a.adjoint()).eval();
    const HermitianEigenSolver<double> mine(a);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ref(a);
    CHECK((mine.eigenvalues() - ref.eigenvalues()).cwiseAbs().maxCoeff() < 1e-11 * a.norm());
    const auto& v = mine.eigenvectors();
    CHECK((a * v - v * mine.eigenvalues().asDiagonal()).norm() < 1e-11 * a.norm());
    CHECK((v.adjoint() * v - Eigen::MatrixXcd::Identity(n, n)).norm() < 1e-12 * n);
  }
  // Already diagonal, and a repeated eigenvalue.
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(3, 3);
  d.diagonal() << 2.0, -1.0, 2.0;
  const HermitianEigenSolver<double> s(d);
  CHECK(s.eigenvalues()(0) == -1.0);
  CHECK(s.eigenvalues()(2) == 2.0);
}

TEST_CASE("quasienergies") {
  SUBCASE("closed form at alpha_c = 0") {
    const auto q = quasienergies(drive(30, 0, 0, 30), FloquetConfig{1});
    const std::vector<double> want{-45, -15, -15, 15, 15, 45};
    for (std::size_t i = 0; i < 6; ++i) CHECK(std::abs(q[i] - want[i]) < 1e-12);
  }
  SUBCASE("decoupled dressed doublets") {
    const auto p = drive(20, 0, 7, 40);
    const int N = 3;
    auto q = quasienergies(p, FloquetConfig{N});
    std::vector<double> want;
    const double r = 0.5 * std::hypot(20.0, 7.0);
    for (int n = -N; n <= N; ++n) {
      want.push_back(3.5 + n * p.beat() + r);
      want.push_back(3.5 + n * p.beat() - r);
    }
    std::sort(want.begin(), want.end());
    for (std::size_t i = 0; i < want.size(); ++i) CHECK(std::abs(q[i] - want[i]) < 1e-11);
  }
  SUBCASE("eigenvector residual") {
    const auto p = drive(30, 30, 0, 30);
    const auto res = solve_floquet(p, FloquetConfig{5});
    const auto h = floquet_matrix(p, FloquetConfig{5});
    for (Eigen::Index k = 0; k < h.rows(); ++k) {
      const auto v = res.eigenvectors.col(k);
      CHECK((h * v - res.quasienergies[k] * v).norm() < 1e-10 * h.norm());
    }
  }
  SUBCASE("N = 1 against the second-order formulas at alpha_c = 0.2") {
    const double a = 0.2;
    const auto q = quasienergies(drive(30, 30 * a, 0, 30), FloquetConfig{1});
    std::vector<double> want{0.5 + 3.0 / 64 * a * a + a / 4, 0.5 + 3.0 / 64 * a * a - a / 4,
                             -0.5 - 3.0 / 64 * a * a + a / 4, -0.5 - 3.0 / 64 * a * a - a / 4,
                             1.5 + 3.0 / 32 * a * a, -1.5 - 3.0 / 32 * a * a};
    for (auto& x : want) x *= 30;
    std::sort(want.begin(), want.end());
    for (std::size_t i = 0; i < 6; ++i) CHECK(std::abs(q[i] - want[i]) < 5 * a * a * a * 30);
  }
}

TEST_CASE("monodromy oracle") {
  for (double a : {0.5, 1.0}) {
    for (int N : {3, 5}) {
      CAPTURE(a);
      CAPTURE(N);
      const auto p = drive(30, 30 * a, 0, 30);
      const double zone = std::abs(p.beat());
      const auto q = quasienergies(p, FloquetConfig{N});
      const auto ref = oracle::monodromy_quasienergies({30, 30 * a, 0, 30, 0, 0, 0});
      for (double e : ref) {
        double best = zone;
        for (double x : q) best = std::min(best, zone_distance(x, e, zone));
        CHECK(best < 1e-6 * 30);
      }
    }
  }
  // Detuned primary drive with a phase on drive 2.
  auto p = drive(31.6, 8, 10, 43.14453198);
  p.phi = 1.1;
  const double zone = std::abs(p.beat());
  const auto q = quasienergies(p, FloquetConfig{5});
  for (double e : oracle::monodromy_quasienergies({31.6, 8, 10, 43.14453198, 1.1, 0, 0})) {
    double best = zone;
    for (double x : q) best = std::min(best, zone_distance(x, e, zone));
    CHECK(best < 1e-6 * 31.6);
  }
}

TEST_CASE("harmonic-order convergence") {
  for (double a : {0.2, 0.6, 1.0}) {
    const auto p = drive(30, 30 * a, 0, 30);
    const double zone = std::abs(p.beat());
    const auto lo = quasienergies(p, FloquetConfig{6});
    const auto hi = quasienergies(p, FloquetConfig{8});
    // Central states (away from the truncation edge) agree after folding.
    const std::size_t mid = lo.size() / 2;
    for (std::size_t i = mid - 2; i < mid + 2; ++i) {
      double best = zone;
      for (double x : hi) best = std::min(best, zone_distance(x, lo[i], zone));
      CHECK(best < 1e-6 * 30);
    }
  }
}

TEST_CASE("transitions") {
  const auto p = drive(30, 0, 0, 30);
  const auto res = solve_floquet(p, FloquetConfig{1});
  CHECK(res.raw_transition_count == 36);
  auto has = [&](double w) {
    return std::any_of(res.transitions.begin(), res.transitions.end(),
                       [&](double x) { return std::abs(x - w) < 1e-9; });
  };
  // Differences of {+-15, +-15 +- 30} ueV.
  for (double w : {0.0, 30.0, -30.0, 60.0, -60.0, 90.0, -90.0}) CHECK(has(w));
  CHECK(res.transitions.size() == 7);

  const auto t = transition_frequencies(drive(30, 30, 0, 30), FloquetConfig{3});
  CHECK(std::is_sorted(t.begin(), t.end()));
  for (std::size_t i = 0; i < t.size(); ++i) CHECK(t[i] == -t[t.size() - 1 - i]);

  // Shifting every level by the same constant leaves the differences alone.
  auto q = quasienergies(drive(30, 30, 0, 30), FloquetConfig{3});
  const double tol = transition_tolerance(drive(30, 30, 0, 30));
  CHECK(tol == doctest::Approx(30e-9));
  for (auto& x : q) x += 30.0;
  const auto shifted = unique_differences(q, tol);
  REQUIRE(shifted.size() == t.size());
  for (std::size_t i = 0; i < t.size(); ++i) CHECK(std::abs(shifted[i] - t[i]) < 1e-9);
}

TEST_CASE("overlay") {
  const auto p = drive(30, 30, 0, 30);
  const auto n1 = floquet_overlay(p, FloquetConfig{1}, -100, 100);
  const auto n3 = floquet_overlay(p, FloquetConfig{3}, -100, 100);
  CHECK(n3.size() > n1.size());
  for (double w : n3) CHECK(std::abs(w) <= 100);
  CHECK(floquet_overlay(p, FloquetConfig{3}, 5, 4).empty());
  CHECK(floquet_overlay(p, FloquetConfig{3}, std::vector<double>{}).empty());
  CHECK(floquet_overlay(p, FloquetConfig{3}, std::vector<double>{-100, 0, 100}) == n3);
}

TEST_CASE("zone folding") {
  CHECK(fold_into_zone(0.0, 30) == 0.0);
  CHECK(fold_into_zone(15.0, 30) == -15.0);
  CHECK(fold_into_zone(-15.0, 30) == -15.0);
  CHECK(fold_into_zone(44.0, 30) == doctest::Approx(14.0));
  CHECK_THROWS_AS(fold_into_zone(1.0, 0.0), DomainError);
}

TEST_CASE("characteristic polynomial") {
  SUBCASE("vanishes at every N = 1 quasienergy") {
    for (double a : {0.0, 0.3, 1.0, 2.5}) {
      for (double d1 : {0.0, 0.3, -0.7}) {
        auto p = drive(30, 30 * a, 30 * d1, 30 * d1 + 36);
        const auto rp = reduce(p);
        const auto q = quasienergies(p, FloquetConfig{1});
        for (double e : q) {
          const double w = e / 30;
          // Scale: the polynomial is sextic in w with O(1) coefficients.
          const double scale = std::pow(1 + std::abs(w) + std::abs(rp.d_t) + std::abs(rp.d1_t) + a, 6);
          CHECK(std::abs(char_poly_residual(w, rp, a)) < 1e-9 * scale);
        }
      }
    }
  }
  SUBCASE("equals -64 det(H/Omega_1 - w)") {
    const auto p = drive(30, 12, 6, -20);
    const auto rp = reduce(p);
    const Eigen::MatrixXcd h = floquet_matrix(p, FloquetConfig{1}) / 30.0;
    for (double w : {-1.3, 0.1, 0.77, 2.0}) {
      const Complex det = (h - w * Eigen::MatrixXcd::Identity(6, 6)).determinant();
      CHECK(char_poly_residual(w, rp, 0.4) == doctest::Approx(-64 * det.real()).epsilon(1e-10));
    }
  }
  SUBCASE("g roots at alpha_c = 0") {
    for (double d1 : {0.0, 0.3}) {
      const ReducedParams rp{d1, -1.2};
      for (double s : {-1.0, 1.0}) {
        const double w = 0.5 * d1 - rp.d_t + s * 0.5 * std::sqrt(1 + d1 * d1);
        CHECK(std::abs(char_poly_residual(w, rp, 0.0)) < 1e-12);
      }
    }
    CHECK(std::abs(char_poly_residual(0.5, {0.0, -1.0}, 0.0)) < 1e-14);
    CHECK(std::abs(char_poly_residual(-0.5, {0.0, -1.0}, 0.0)) < 1e-14);
  }
  CHECK_THROWS_AS(reduce(drive(0, 1, 0, 1)), DomainError);
}

TEST_CASE("eta factor") {
  CHECK(eta_factor(30, 0) == 1.0);
  CHECK(eta_factor(31.6, 10) == doctest::Approx(0.698).epsilon(1e-3));
  CHECK(eta_factor(1, 1e9) < 1e-15);
  CHECK_THROWS_AS(eta_factor(0, 1), DomainError);
}
