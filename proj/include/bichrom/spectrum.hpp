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

// Quantum-regression two-time correlations of the fluctuation operators,
// averaged over one period of the converged cycle, and the incoherent
// emission spectrum obtained from them.

#include <cstddef>
#include <string>
#include <vector>

#include "bichrom/core.hpp"
#include "bichrom/dynamics.hpp"

namespace bichrom {

struct SpectrumConfig {
  double tail_tol = 1e-4;       // |C(tau_max)| must fall below tail_tol * |C(0)|
  double tau_max = 0.0;         // ps; 0 selects 12 hbar / slowest decay rate
  double window_hwhm = 0.0;     // ueV; optional exponential window exp(-w tau / hbar)
  double sample_offset = 0.0;   // ps; time of the first averaging sample
};

/// Uniform delay grid tau_j = j * step, j = 0 .. count-1.
struct TauGrid {
  double step = 0.0;
  std::size_t count = 0;

  double operator[](std::size_t j) const { return step * static_cast<double>(j); }
  double max() const { return count ? (*this)[count - 1] : 0.0; }
};

struct CorrelationTrace {
  TauGrid tau;
  std::vector<Complex> values;  // time-averaged <s+_d(t) s-_d(t+tau)>
};

struct SpectrumTrace {
  std::vector<double> omega_rel;  // omega - omega_1, ueV
  std::vector<double> values;     // S_i, arbitrary units
  DriveParams drive;
  DissipationParams dissipation;
  std::string fingerprint;  // numerical settings used
  double window_hwhm = 0.0;

  std::size_t size() const { return values.size(); }
};

std::vector<double> uniform_grid(double min, double max, std::size_t points);

/// Slowest relaxation rate of the Bloch equations, min(gamma, (gamma+gamma')/2), in ueV.
double slowest_decay_rate(const DissipationParams& d);

double default_tau_max(const DissipationParams& d);

/// Delay grid for a spectrum on `omega_rel`: the step obeys the Nyquist-style
/// bound pi hbar / (4 max|omega|) and, for a periodic drive, divides the
/// averaging sample spacing T/K exactly so slices can be reused.
TauGrid default_tau_grid(const std::vector<double>& omega_rel, const DriveParams& p,
                         const DissipationParams& d, const PropagatorConfig& pcfg,
                         const SpectrumConfig& scfg);

/// C(t, tau) = <s+(t) s-(t+tau)> - <s+(t)><s-(t+tau)> for t on the converged
/// cycle, by direct integration of rho(t) s+ and rho(t) over the delay grid.
std::vector<Complex> two_time_correlation(double t, const TauGrid& tau, const DriveParams& p,
                                          const DissipationParams& d,
                                          const PropagatorConfig& cfg);

/// Correlation averaged over K = cfg.period_samples evenly spaced times of one
/// period. A degenerate drive reduces to the single stationary correlator.
CorrelationTrace time_averaged_correlation(const TauGrid& tau, const DriveParams& p,
                                           const DissipationParams& d,
                                           const PropagatorConfig& pcfg,
                                           const SpectrumConfig& scfg = {});

/// S(omega) = Re sum_j w_j exp(i omega tau_j / hbar) W(tau_j) C(tau_j) with
/// trapezoid weights w_j and optional exponential window W.
std::vector<double> transform_correlation(const CorrelationTrace& corr,
                                          const std::vector<double>& omega_rel,
                                          double window_hwhm = 0.0);

SpectrumTrace incoherent_spectrum(const std::vector<double>& omega_rel, const DriveParams& p,
                                  const DissipationParams& d, const PropagatorConfig& pcfg,
                                  const SpectrumConfig& scfg = {});

}  // namespace bichrom
