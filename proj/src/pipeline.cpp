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

#include "bichrom/pipeline.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <thread>

#include <json.hpp>

#include "bichrom/error.hpp"
#include "bichrom/floquet.hpp"

#ifndef BICHROM_VERSION
#define BICHROM_VERSION "unknown"
#endif

namespace bichrom {
namespace {

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Provenance make_provenance(const RunConfig& cfg, double seconds, unsigned threads) {
  Provenance pv;
  pv.config_hash = config_hash(cfg);
  pv.version = BICHROM_VERSION;
  pv.eigen_version = std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
                     "." + std::to_string(EIGEN_MINOR_VERSION);
  pv.timestamp = utc_now();
  pv.wall_seconds = seconds;
  pv.threads = threads;
  return pv;
}

struct PointOutput {
  SpectrumTrace trace;
  std::vector<double> overlay;
};

PointOutput compute_point(const RunConfig& cfg, const DriveParams& drive) {
  const auto grid = omega_grid(cfg);
  PointOutput out;
  try {
    out.trace = incoherent_spectrum(grid, drive, cfg.dissipation, cfg.propagator, cfg.spectrum);
  } catch (const NumericalError& e) {
    throw NumericalError(e.code(), std::string("spectrum: ") + e.what());
  }
  if (cfg.overlay && drive.beat() != 0.0) {
    out.overlay = floquet_overlay(drive, cfg.floquet, cfg.omega_min, cfg.omega_max);
  }
  return out;
}

}  // namespace

std::size_t SweepResult::failures() const {
  std::size_t n = 0;
  for (const auto& e : errors) n += e.empty() ? 0 : 1;
  return n;
}

std::vector<double> axis_values(const SweepAxis& axis) {
  if (axis.points < 2) throw DomainError("sweep needs at least two points");
  std::vector<double> v(axis.points);
  const double n = static_cast<double>(axis.points - 1);
  for (std::size_t i = 0; i < axis.points; ++i) {
    const double f = static_cast<double>(i) / n;
    if (axis.scale == SweepScale::quadratic_in_power) {
      const double p0 = axis.min * axis.min, p1 = axis.max * axis.max;
      v[i] = std::sqrt(p0 + f * (p1 - p0));
    } else {
      v[i] = axis.min + f * (axis.max - axis.min);
    }
  }
  v.back() = axis.max;
  return v;
}

DriveParams apply_axis(DriveParams p, SweepParameter parameter, double value) {
  switch (parameter) {
    case SweepParameter::omega2: p.omega2 = value; break;
    case SweepParameter::delta2: p.delta2 = value; break;
    case SweepParameter::delta: p.delta2 = p.delta1 - value; break;
  }
  return p;
}

std::string canonical_config(const RunConfig& c) {
  nlohmann::ordered_json j;
  j["drive"] = {{"omega1_ueV", c.drive.omega1},   {"omega2_ueV", c.drive.omega2},
                {"delta1_ueV", c.drive.delta1},   {"delta2_ueV", c.drive.delta2},
                {"phi_rad", c.drive.phi},         {"frame_origin_ueV", c.drive.frame_origin}};
  j["dissipation"] = {{"gamma_ueV", c.dissipation.gamma},
                      {"gamma_prime_ueV", c.dissipation.gamma_prime}};
  j["numerics"] = {{"step_max_ps", c.propagator.step_max},
                   {"rel_tol", c.propagator.rel_tol},
                   {"abs_tol", c.propagator.abs_tol},
                   {"transient_factor", c.propagator.transient_factor},
                   {"ss_tol", c.propagator.ss_tol},
                   {"period_samples", c.propagator.period_samples},
                   {"max_periods", c.propagator.max_periods}};
  j["spectrum"] = {{"omega_min_ueV", c.omega_min},
                   {"omega_max_ueV", c.omega_max},
                   {"points", c.omega_points},
                   {"tau_max_ps", c.spectrum.tau_max},
                   {"tail_tol", c.spectrum.tail_tol},
                   {"window_hwhm_ueV", c.spectrum.window_hwhm},
                   {"sample_offset_ps", c.spectrum.sample_offset}};
  j["floquet"] = {{"order", c.floquet.order}, {"overlay", c.overlay}};
  if (c.sweep) {
    j["sweep"] = {{"parameter", to_string(c.sweep->parameter)},
                  {"min", c.sweep->min},
                  {"max", c.sweep->max},
                  {"points", c.sweep->points},
                  {"scale", c.sweep->scale == SweepScale::linear ? "linear" : "quadratic-in-power"}};
  }
  j["phonon"] = {{"alpha_ps2", c.phonon.alpha},
                 {"temperature_K", c.phonon.temperature},
                 {"omega_b_ueV", c.phonon.omega_b}};
  return j.dump();
}

std::string config_hash(const RunConfig& cfg) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : canonical_config(cfg)) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

SpectrumRun run_spectrum(const RunConfig& cfg) {
  if (cfg.sweep) throw DomainError("run_spectrum: config has a sweep axis");
  const auto start = std::chrono::steady_clock::now();
  PointOutput pt = compute_point(cfg, cfg.drive);
  SpectrumRun run;
  run.trace = std::move(pt.trace);
  run.has_overlay = cfg.overlay && cfg.drive.beat() != 0.0;
  run.overlay = std::move(pt.overlay);
  const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
  run.provenance = make_provenance(cfg, dt.count(), 1);
  return run;
}

SweepResult run_sweep(const RunConfig& cfg, const SweepOptions& opts) {
  if (!cfg.sweep) throw DomainError("run_sweep: config has no sweep axis");
  const auto start = std::chrono::steady_clock::now();

  SweepResult res;
  res.parameter = cfg.sweep->parameter;
  res.axis = axis_values(*cfg.sweep);
  const std::size_t n = res.axis.size();
  res.traces.resize(n);
  res.overlays.resize(n);
  res.errors.resize(n);
  res.has_overlay = cfg.overlay;

  std::vector<std::size_t> order = opts.order;
  if (order.empty()) {
    order.resize(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
  }
  if (order.size() != n) throw DomainError("evaluation order must cover every axis point");

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < n;) {
      const std::size_t i = order[k];
      try {
        PointOutput pt = compute_point(cfg, apply_axis(cfg.drive, res.parameter, res.axis[i]));
        res.traces[i] = std::move(pt.trace);
        res.overlays[i] = std::move(pt.overlay);
      } catch (const std::exception& e) {
        res.errors[i] = e.what();
        if (res.errors[i].empty()) res.errors[i] = "unknown failure";
      }
    }
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(n)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
  res.provenance = make_provenance(cfg, dt.count(), threads);
  return res;
}

}  // namespace bichrom
