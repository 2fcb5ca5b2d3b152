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

#include "bichrom/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

namespace bichrom {
namespace {

constexpr int kVecGx = 1;  // Tr[s+ X] = X_gx
constexpr int kVecXg = 2;  // Tr[s- X] = X_xg

std::string fingerprint(const TauGrid& tau, const PropagatorConfig& pcfg,
                        const SpectrumConfig& scfg, double step_max) {
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "K=%d;dtau_ps=%.17g;ntau=%zu;step_max_ps=%.17g;rel_tol=%.17g;abs_tol=%.17g;"
                "ss_tol=%.17g;transient=%.17g;tail_tol=%.17g;window_ueV=%.17g;offset_ps=%.17g",
                pcfg.period_samples, tau.step, tau.count, step_max, pcfg.rel_tol, pcfg.abs_tol,
                pcfg.ss_tol, pcfg.transient_factor, scfg.tail_tol, scfg.window_hwhm,
                scfg.sample_offset);
  return buf;
}

// Fluctuation correlator from one cycle state, propagated slice by slice.
void accumulate_sample(const Operator2& rho, const PeriodicPropagator& prop,
                       std::size_t first_slice, std::size_t count, std::vector<Complex>& sum) {
  Vector4 v = vectorize(rho * sigma_plus());
  Vector4 u = vectorize(rho);
  const Complex mean_plus = u(kVecGx);
  for (std::size_t j = 0; j < count; ++j) {
    sum[j] += v(kVecXg) - mean_plus * u(kVecXg);
    const Superoperator4& step = prop.slice(first_slice + j);
    v = step * v;
    u = step * u;
  }
}

void check_tail(const std::vector<Complex>& c, double tail_tol) {
  const double head = std::abs(c.front());
  const double tail = std::abs(c.back());
  if (tail > tail_tol * head) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "|C(tau_max)| = %.3e exceeds %.1e * |C(0)| = %.3e", tail,
                  tail_tol, tail_tol * head);
    throw NumericalError(NumericalErrc::tail_not_converged, buf);
  }
}

}  // namespace

std::vector<double> uniform_grid(double min, double max, std::size_t points) {
  if (points < 2) throw DomainError("a grid needs at least two points");
  if (!(max > min)) throw DomainError("grid max must exceed grid min");
  std::vector<double> g(points);
  const double n = static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    g[i] = min + (max - min) * static_cast<double>(i) / n;
  }
  return g;
}

double slowest_decay_rate(const DissipationParams& d) {
  if (!(d.gamma > 0.0)) throw DomainError("the spectrum engine requires gamma > 0");
  return std::min(d.gamma, 0.5 * (d.gamma + d.gamma_prime));
}

double default_tau_max(const DissipationParams& d) {
  return 12.0 * units::hbar / slowest_decay_rate(d);
}

TauGrid default_tau_grid(const std::vector<double>& omega_rel, const DriveParams& p,
                         const DissipationParams& d, const PropagatorConfig& pcfg,
                         const SpectrumConfig& scfg) {
  double max_abs = 0.0;
  for (double w : omega_rel) max_abs = std::max(max_abs, std::abs(w));
  const double tau_max = scfg.tau_max > 0.0 ? scfg.tau_max : default_tau_max(d);
  double step = max_abs > 0.0 ? units::pi * units::hbar / (4.0 * max_abs) : tau_max / 64.0;

  if (p.beat() != 0.0) {
    const double spacing = drive_period(p) / pcfg.period_samples;
    const double per_sample = std::max(1.0, std::ceil(spacing / step - 1e-9));
    step = spacing / per_sample;
  }
  return {step, static_cast<std::size_t>(std::ceil(tau_max / step - 1e-9)) + 1};
}

std::vector<Complex> two_time_correlation(double t, const TauGrid& tau, const DriveParams& p,
                                          const DissipationParams& d,
                                          const PropagatorConfig& cfg) {
  if (tau.count == 0) return {};
  const Operator2 rho = p.beat() == 0.0 ? stationary_state(p, d)
                                        : periodic_steady_state(p, d, cfg, t).samples.front();
  Vector4 v = vectorize(rho * sigma_plus());
  Vector4 u = vectorize(rho);
  const Complex mean_plus = u(kVecGx);

  std::vector<Complex> c(tau.count);
  for (std::size_t j = 0; j < tau.count; ++j) {
    c[j] = v(kVecXg) - mean_plus * u(kVecXg);
    if (j + 1 == tau.count) break;
    v = propagate_vector(v, t + tau[j], t + tau[j + 1], p, d, cfg);
    u = propagate_vector(u, t + tau[j], t + tau[j + 1], p, d, cfg);
  }
  return c;
}

CorrelationTrace time_averaged_correlation(const TauGrid& tau, const DriveParams& p,
                                           const DissipationParams& d,
                                           const PropagatorConfig& pcfg,
                                           const SpectrumConfig& scfg) {
  if (tau.count == 0 || !(tau.step > 0.0)) throw DomainError("empty delay grid");
  if (pcfg.period_samples < 1) throw DomainError("period_samples must be >= 1");
  CorrelationTrace out{tau, std::vector<Complex>(tau.count, Complex(0.0))};

  if (p.beat() == 0.0) {
    const PeriodicPropagator prop(p, d, pcfg, 0.0, tau.step, 1);
    accumulate_sample(stationary_state(p, d), prop, 0, tau.count, out.values);
    return out;
  }

  const double period = drive_period(p);
  const auto k_samples = static_cast<std::size_t>(pcfg.period_samples);
  const double per_sample = std::round(period / (static_cast<double>(k_samples) * tau.step));
  const bool aligned =
      per_sample >= 1.0 &&
      std::abs(per_sample * static_cast<double>(k_samples) * tau.step - period) <= 1e-9 * period;

  if (aligned) {
    const auto stride = static_cast<std::size_t>(per_sample);
    const PeriodicPropagator prop(p, d, pcfg, scfg.sample_offset, period, k_samples * stride);
    const PeriodicSteadyState cycle = periodic_steady_state(prop, d, pcfg, stride);
    for (std::size_t k = 0; k < k_samples; ++k) {
      accumulate_sample(cycle.samples[k], prop, k * stride, tau.count, out.values);
    }
  } else {
    const PeriodicSteadyState cycle = periodic_steady_state(p, d, pcfg, scfg.sample_offset);
    for (std::size_t k = 0; k < k_samples; ++k) {
      const auto c = two_time_correlation(cycle.sample_time(k), tau, p, d, pcfg);
      for (std::size_t j = 0; j < tau.count; ++j) out.values[j] += c[j];
    }
  }
  for (auto& c : out.values) c /= static_cast<double>(k_samples);
  return out;
}

std::vector<double> transform_correlation(const CorrelationTrace& corr,
                                          const std::vector<double>& omega_rel,
                                          double window_hwhm) {
  const std::size_t n = corr.values.size();
  std::vector<Complex> weighted(n);
  for (std::size_t j = 0; j < n; ++j) {
    double w = corr.tau.step;
    if (j == 0 || j + 1 == n) w *= 0.5;
    if (window_hwhm > 0.0) w *= std::exp(-window_hwhm * corr.tau[j] / units::hbar);
    weighted[j] = w * corr.values[j];
  }

  // exp(i omega tau_j / hbar) by rotation, re-seeded every block to bound drift.
  constexpr std::size_t kBlock = 256;
  std::vector<double> s(omega_rel.size());
  for (std::size_t i = 0; i < omega_rel.size(); ++i) {
    const double rate = omega_rel[i] / units::hbar;
    const Complex rot = std::polar(1.0, rate * corr.tau.step);
    Complex acc(0.0);
    Complex phase(1.0);
    for (std::size_t j = 0; j < n; ++j) {
      if (j % kBlock == 0) phase = std::polar(1.0, rate * corr.tau[j]);
      acc += phase * weighted[j];
      phase *= rot;
    }
    s[i] = acc.real();
  }
  return s;
}

SpectrumTrace incoherent_spectrum(const std::vector<double>& omega_rel, const DriveParams& p,
                                  const DissipationParams& d, const PropagatorConfig& pcfg,
                                  const SpectrumConfig& scfg) {
  p.validate();
  d.validate();
  if (omega_rel.empty()) throw DomainError("empty frequency grid");
  const TauGrid tau = default_tau_grid(omega_rel, p, d, pcfg, scfg);
  const CorrelationTrace corr = time_averaged_correlation(tau, p, d, pcfg, scfg);
  check_tail(corr.values, scfg.tail_tol);

  SpectrumTrace trace;
  trace.omega_rel = omega_rel;
  trace.values = transform_correlation(corr, omega_rel, scfg.window_hwhm);
  trace.drive = p;
  trace.dissipation = d;
  trace.window_hwhm = scfg.window_hwhm;
  trace.fingerprint = fingerprint(tau, pcfg, scfg, effective_step_max(p, d, pcfg));
  return trace;
}

}  // namespace bichrom
