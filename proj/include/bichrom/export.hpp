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

// CSV and JSON export. Floats are written as the shortest decimal that
// round-trips to the same double.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "bichrom/pipeline.hpp"

namespace bichrom {

enum class ExportFormat { csv, json };

std::string format_double(double x);

// "omega_rel_ueV,intensity" for one trace; sweeps prepend axis_value.
void write_csv(std::ostream& os, const SpectrumTrace& trace);
void write_csv(std::ostream& os, const SweepResult& sweep);

// "transition_ueV" for one run; sweeps prepend axis_value.
void write_overlay_csv(std::ostream& os, const SpectrumRun& run);
void write_overlay_csv(std::ostream& os, const SweepResult& sweep);

nlohmann::ordered_json to_json(const SpectrumRun& run);
nlohmann::ordered_json to_json(const SweepResult& sweep);
SpectrumRun spectrum_run_from_json(const nlohmann::json& j);
SweepResult sweep_from_json(const nlohmann::json& j);

/// Writes spectrum.csv (+ overlay.csv) or spectrum.json into `dir`, creating
/// it if needed. Returns the files written.
std::vector<std::filesystem::path> export_result(const SpectrumRun& run, ExportFormat format,
                                                 const std::filesystem::path& dir);
std::vector<std::filesystem::path> export_result(const SweepResult& sweep, ExportFormat format,
                                                 const std::filesystem::path& dir);

}  // namespace bichrom
