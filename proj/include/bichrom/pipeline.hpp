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

// End-to-end runs: one spectrum, or a sweep of independent spectra fanned
// out over a worker pool and assembled in axis order.

#include <cstddef>
#include <string>
#include <vector>

#include "bichrom/config.hpp"
#include "bichrom/spectrum.hpp"

namespace bichrom {

struct Provenance {
  std::string config_hash;  // FNV-1a of the canonical config, hex
  std::string version;
  std::string eigen_version;
  std::string timestamp;  // UTC, ISO 8601
  double wall_seconds = 0.0;
  unsigned threads = 1;
};

struct SpectrumRun {
  SpectrumTrace trace;
  bool has_overlay = false;
  std::vector<double> overlay;  // Floquet transitions inside the omega window
  Provenance provenance;
};

struct SweepResult {
  SweepParameter parameter = SweepParameter::omega2;
  std::vector<double> axis;
  std::vector<SpectrumTrace> traces;  // empty values where the point failed
  bool has_overlay = false;
  std::vector<std::vector<double>> overlays;
  std::vector<std::string> errors;  // empty string where the point succeeded
  Provenance provenance;

  std::size_t failures() const;
};

struct SweepOptions {
  unsigned threads = 1;
  // Evaluation order of the axis points; empty means 0..n-1. Results are
  // always stored in axis order.
  std::vector<std::size_t> order;
};

std::vector<double> axis_values(const SweepAxis& axis);

/// Drive parameters for one axis point. Sweeping `delta` keeps delta1 fixed
/// and moves the second laser: delta2 = delta1 - value.
DriveParams apply_axis(DriveParams p, SweepParameter parameter, double value);

/// Canonical JSON text of the configuration (stable key order), and its hash.
std::string canonical_config(const RunConfig& cfg);
std::string config_hash(const RunConfig& cfg);

SpectrumRun run_spectrum(const RunConfig& cfg);
SweepResult run_sweep(const RunConfig& cfg, const SweepOptions& opts = {});

}  // namespace bichrom
