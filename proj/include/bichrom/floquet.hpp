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

#pragma once

// Truncated Floquet analysis of the bichromatic Hamiltonian: the harmonic
// block matrix, its quasienergies and the transition frequencies they imply,
// plus closed-form helpers for the weak-second-drive regime.

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "bichrom/core.hpp"

namespace bichrom {

struct FloquetConfig {
  int order = 3;  // harmonics n = -order .. order

  int dimension() const { return 2 * (2 * order + 1); }
};

inline constexpr int kMaxFloquetOrder = 50;

/// Floquet matrix in ueV. Rows/columns are ordered by harmonic n = N, N-1,
/// ..., -N, each a 2x2 block in the (x, g) basis. Diagonal blocks hold the
/// period-averaged Hamiltonian plus n*beat; drive 2 couples (g, n) to
/// (x, n-1) with Omega_2/2.
template <typename Scalar = double>
Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic> floquet_matrix(
    const DriveParams& p, const FloquetConfig& cfg) {
  if (cfg.order < 0 || cfg.order > kMaxFloquetOrder) {
    throw DomainError("Floquet order must lie in [0, 50]");
  }
  using C = std::complex<Scalar>;
  const Eigen::Index m = cfg.dimension();
  Eigen::Matrix<C, Eigen::Dynamic, Eigen::Dynamic> h =
      Eigen::Matrix<C, Eigen::Dynamic, Eigen::Dynamic>::Zero(m, m);
  const Scalar half1 = Scalar(p.omega1) / 2;
  const C half2 = std::polar(Scalar(p.omega2) / 2, Scalar(p.phi));
  for (int b = 0; b <= 2 * cfg.order; ++b) {
    const Scalar n = Scalar(cfg.order - b);
    const Eigen::Index x = 2 * b + kX;
    const Eigen::Index g = 2 * b + kG;
    h(x, x) = Scalar(p.delta1) + n * Scalar(p.beat());
    h(g, g) = n * Scalar(p.beat());
    h(x, g) = half1;
    h(g, x) = half1;
    if (b + 1 <= 2 * cfg.order) {
      const Eigen::Index x_next = 2 * (b + 1) + kX;
      h(g, x_next) = half2;
      h(x_next, g) = std::conj(half2);
    }
  }
  return h;
}

struct FloquetResult {
  std::vector<double> quasienergies;  // ascending, ueV
  Eigen::MatrixXcd eigenvectors;      // columns: Fourier coefficients c^(n)_{beta}
  std::vector<double> transitions;    // deduplicated omega - omega_1, ueV
  std::size_t raw_transition_count = 0;
};

FloquetResult solve_floquet(const DriveParams& p, const FloquetConfig& cfg);

std::vector<double> quasienergies(const DriveParams& p, const FloquetConfig& cfg);

std::vector<double> transition_frequencies(const DriveParams& p, const FloquetConfig& cfg);

/// All pairwise differences e_i - e_j, sorted and merged within `tol`.
std::vector<double> unique_differences(const std::vector<double>& energies, double tol,
                                       std::size_t* raw_count = nullptr);

double transition_tolerance(const DriveParams& p);

/// Transitions inside [omega_min, omega_max]; empty when the range is empty.
std::vector<double> floquet_overlay(const DriveParams& p, const FloquetConfig& cfg,
                                    double omega_min, double omega_max);
std::vector<double> floquet_overlay(const DriveParams& p, const FloquetConfig& cfg,
                                    const std::vector<double>& omega_grid);

/// Map an energy into the zone [-zone/2, zone/2).
double fold_into_zone(double energy, double zone);

/// Detunings in units of Omega_1.
struct ReducedParams {
  double d1_t;  // Delta_1 / Omega_1
  double d_t;   // Delta / Omega_1
};

ReducedParams reduce(const DriveParams& p);

/// Characteristic polynomial of the N = 1 Floquet matrix in reduced units,
/// written with the g(w) pole of beta(w) cleared. Equals
/// -64 det(H_F / Omega_1 - w) and vanishes at every N = 1 quasienergy.
double char_poly_residual(double omega_t, const ReducedParams& rp, double alpha_c);

/// Reduction of the second-drive splitting for a detuned primary drive.
double eta_factor(double omega1, double delta1);

}  // namespace bichrom
