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

#include "bichrom/floquet.hpp"

#include <algorithm>
#include <cmath>

#include "bichrom/hermitian_eigen.hpp"

namespace bichrom {

FloquetResult solve_floquet(const DriveParams& p, const FloquetConfig& cfg) {
  p.validate();
  const HermitianEigenSolver<double> solver(floquet_matrix<double>(p, cfg));
  FloquetResult out;
  const auto& ev = solver.eigenvalues();
  out.quasienergies.assign(ev.data(), ev.data() + ev.size());
  out.eigenvectors = solver.eigenvectors();
  out.transitions =
      unique_differences(out.quasienergies, transition_tolerance(p), &out.raw_transition_count);
  return out;
}

std::vector<double> quasienergies(const DriveParams& p, const FloquetConfig& cfg) {
  p.validate();
  const HermitianEigenSolver<double> solver(floquet_matrix<double>(p, cfg), false);
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

std::vector<double> transition_frequencies(const DriveParams& p, const FloquetConfig& cfg) {
  return unique_differences(quasienergies(p, cfg), transition_tolerance(p));
}

double transition_tolerance(const DriveParams& p) {
  return 1e-9 * std::max({p.omega1, std::abs(p.beat()), 1.0});
}

std::vector<double> unique_differences(const std::vector<double>& energies, double tol,
                                       std::size_t* raw_count) {
  std::vector<double> diffs;
  diffs.reserve(energies.size() * energies.size());
  for (double a : energies)
    for (double b : energies) diffs.push_back(a - b);
  if (raw_count) *raw_count = diffs.size();
  std::sort(diffs.begin(), diffs.end());

  std::vector<double> out;
  std::size_t i = 0;
  while (i < diffs.size()) {
    std::size_t j = i;
    while (j + 1 < diffs.size() && diffs[j + 1] - diffs[i] <= tol) ++j;
    out.push_back(0.5 * (diffs[i] + diffs[j]));
    i = j + 1;
  }
  return out;
}

std::vector<double> floquet_overlay(const DriveParams& p, const FloquetConfig& cfg,
                                    double omega_min, double omega_max) {
  if (!(omega_max >= omega_min)) return {};
  std::vector<double> out;
  for (double w : transition_frequencies(p, cfg)) {
    if (w >= omega_min && w <= omega_max) out.push_back(w);
  }
  return out;
}

std::vector<double> floquet_overlay(const DriveParams& p, const FloquetConfig& cfg,
                                    const std::vector<double>& omega_grid) {
  if (omega_grid.empty()) return {};
  const auto [lo, hi] = std::minmax_element(omega_grid.begin(), omega_grid.end());
  return floquet_overlay(p, cfg, *lo, *hi);
}

double fold_into_zone(double energy, double zone) {
  if (!(zone > 0.0)) throw DomainError("zone width must be positive");
  return energy - zone * std::floor((energy + 0.5 * zone) / zone);
}

ReducedParams reduce(const DriveParams& p) {
  if (!(p.omega1 > 0.0)) throw DomainError("reduced units need omega1 > 0");
  return {p.delta1 / p.omega1, p.beat() / p.omega1};
}

double char_poly_residual(double omega_t, const ReducedParams& rp, double alpha_c) {
  const double w = omega_t;
  const double a2 = alpha_c * alpha_c;
  const double shifted = w + rp.d_t - 0.5 * rp.d1_t;
  const double g = (1.0 + rp.d1_t * rp.d1_t) - 4.0 * shifted * shifted;
  // g * (beta + w), with beta = alpha_c^2 (w + d) / g
  const double g_beta_w = a2 * (w + rp.d_t) + w * g;
  const double g_f = g + 4.0 * g_beta_w * (rp.d1_t - w);
  const double upper = rp.d1_t + rp.d_t - w;
  return g_f * (1.0 - 4.0 * (rp.d_t - w) * upper) + 4.0 * a2 * g_beta_w * upper;
}

double eta_factor(double omega1, double delta1) {
  if (!(omega1 > 0.0)) throw DomainError("eta_factor needs omega1 > 0");
  return 1.0 - delta1 / std::hypot(omega1, delta1);
}

}  // namespace bichrom
