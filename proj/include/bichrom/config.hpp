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

// Run configuration: a flat "section.key = value" text format with '#'
// comments, or the equivalent JSON object (nested or with dotted keys).

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "bichrom/core.hpp"
#include "bichrom/dynamics.hpp"
#include "bichrom/floquet.hpp"
#include "bichrom/phonon.hpp"
#include "bichrom/spectrum.hpp"

namespace bichrom {

enum class SweepParameter { omega2, delta2, delta };
enum class SweepScale { linear, quadratic_in_power };

struct SweepAxis {
  SweepParameter parameter = SweepParameter::omega2;
  double min = 0.0;
  double max = 0.0;
  std::size_t points = 2;
  SweepScale scale = SweepScale::linear;
};

struct RunConfig {
  DriveParams drive;
  DissipationParams dissipation;
  PropagatorConfig propagator;
  SpectrumConfig spectrum;
  double omega_min = -60.0;  // ueV, relative to drive 1
  double omega_max = 60.0;
  std::size_t omega_points = 1201;
  FloquetConfig floquet;
  bool overlay = false;
  std::optional<SweepAxis> sweep;
  PhononParams phonon;
};

class ConfigError : public std::runtime_error {
 public:
  enum class Kind { syntax, unknown_key, type_mismatch, constraint_violation, duplicate_key };

  ConfigError(Kind kind, std::string key, int line, const std::string& detail);

  Kind kind() const noexcept { return kind_; }
  const std::string& key() const noexcept { return key_; }
  int line() const noexcept { return line_; }  // 0 when unknown (JSON input)

 private:
  Kind kind_;
  std::string key_;
  int line_;
};

const char* to_string(ConfigError::Kind kind);
const char* to_string(SweepParameter p);

/// Parses either format; text whose first non-blank character is '{' is JSON.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

std::vector<double> omega_grid(const RunConfig& cfg);

}  // namespace bichrom
