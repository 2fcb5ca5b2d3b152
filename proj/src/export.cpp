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

#include "bichrom/export.hpp"

#include <cerrno>
#include <charconv>
#include <cstring>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace bichrom {
namespace {

using ojson = nlohmann::ordered_json;

ojson drive_json(const DriveParams& p) {
  return {{"omega1_ueV", p.omega1}, {"omega2_ueV", p.omega2}, {"delta1_ueV", p.delta1},
          {"delta2_ueV", p.delta2}, {"phi_rad", p.phi},       {"frame_origin_ueV", p.frame_origin}};
}

DriveParams drive_from(const nlohmann::json& j) {
  DriveParams p;
  p.omega1 = j.at("omega1_ueV").get<double>();
  p.omega2 = j.at("omega2_ueV").get<double>();
  p.delta1 = j.at("delta1_ueV").get<double>();
  p.delta2 = j.at("delta2_ueV").get<double>();
  p.phi = j.at("phi_rad").get<double>();
  p.frame_origin = j.at("frame_origin_ueV").get<double>();
  return p;
}

ojson provenance_json(const Provenance& pv) {
  return {{"config_hash", pv.config_hash}, {"version", pv.version},
          {"eigen_version", pv.eigen_version}, {"timestamp", pv.timestamp},
          {"wall_seconds", pv.wall_seconds}, {"threads", pv.threads}};
}

Provenance provenance_from(const nlohmann::json& j) {
  Provenance pv;
  pv.config_hash = j.at("config_hash").get<std::string>();
  pv.version = j.at("version").get<std::string>();
  pv.eigen_version = j.at("eigen_version").get<std::string>();
  pv.timestamp = j.at("timestamp").get<std::string>();
  pv.wall_seconds = j.at("wall_seconds").get<double>();
  pv.threads = j.at("threads").get<unsigned>();
  return pv;
}

ojson trace_json(const SpectrumTrace& t) {
  return {{"drive", drive_json(t.drive)},
          {"dissipation", {{"gamma_ueV", t.dissipation.gamma},
                           {"gamma_prime_ueV", t.dissipation.gamma_prime}}},
          {"window_hwhm_ueV", t.window_hwhm},
          {"fingerprint", t.fingerprint},
          {"omega_rel_ueV", t.omega_rel},
          {"intensity", t.values}};
}

SpectrumTrace trace_from(const nlohmann::json& j) {
  SpectrumTrace t;
  t.drive = drive_from(j.at("drive"));
  t.dissipation.gamma = j.at("dissipation").at("gamma_ueV").get<double>();
  t.dissipation.gamma_prime = j.at("dissipation").at("gamma_prime_ueV").get<double>();
  t.window_hwhm = j.at("window_hwhm_ueV").get<double>();
  t.fingerprint = j.at("fingerprint").get<std::string>();
  t.omega_rel = j.at("omega_rel_ueV").get<std::vector<double>>();
  t.values = j.at("intensity").get<std::vector<double>>();
  return t;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot open " + path.string() + ": " + std::strerror(errno));
  return os;
}

void close_out(std::ofstream& os, const std::filesystem::path& path) {
  os.flush();
  if (!os) throw std::runtime_error("write failed for " + path.string() + ": " + std::strerror(errno));
}

SweepParameter parameter_from(const std::string& s) {
  if (s == "omega2") return SweepParameter::omega2;
  if (s == "delta2") return SweepParameter::delta2;
  if (s == "delta") return SweepParameter::delta;
  throw std::runtime_error("unknown sweep parameter '" + s + "'");
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

void write_csv(std::ostream& os, const SpectrumTrace& trace) {
  os << "omega_rel_ueV,intensity\n";
  for (std::size_t i = 0; i < trace.size(); ++i) {
    os << format_double(trace.omega_rel[i]) << ',' << format_double(trace.values[i]) << '\n';
  }
}

void write_csv(std::ostream& os, const SweepResult& sweep) {
  os << "axis_value,omega_rel_ueV,intensity\n";
  for (std::size_t k = 0; k < sweep.axis.size(); ++k) {
    const auto& t = sweep.traces[k];
    const std::string a = format_double(sweep.axis[k]);
    for (std::size_t i = 0; i < t.size(); ++i) {
      os << a << ',' << format_double(t.omega_rel[i]) << ',' << format_double(t.values[i]) << '\n';
    }
  }
}

void write_overlay_csv(std::ostream& os, const SpectrumRun& run) {
  os << "transition_ueV\n";
  for (double w : run.overlay) os << format_double(w) << '\n';
}

void write_overlay_csv(std::ostream& os, const SweepResult& sweep) {
  os << "axis_value,transition_ueV\n";
  for (std::size_t k = 0; k < sweep.axis.size(); ++k) {
    const std::string a = format_double(sweep.axis[k]);
    for (double w : sweep.overlays[k]) os << a << ',' << format_double(w) << '\n';
  }
}

nlohmann::ordered_json to_json(const SpectrumRun& run) {
  ojson j;
  j["kind"] = "spectrum";
  j["trace"] = trace_json(run.trace);
  if (run.has_overlay) j["overlay_ueV"] = run.overlay;
  j["provenance"] = provenance_json(run.provenance);
  return j;
}

nlohmann::ordered_json to_json(const SweepResult& sweep) {
  ojson j;
  j["kind"] = "sweep";
  j["parameter"] = to_string(sweep.parameter);
  j["axis"] = sweep.axis;
  j["has_overlay"] = sweep.has_overlay;
  ojson points = ojson::array();
  for (std::size_t k = 0; k < sweep.axis.size(); ++k) {
    ojson p;
    p["axis_value"] = sweep.axis[k];
    p["error"] = sweep.errors[k];
    p["trace"] = trace_json(sweep.traces[k]);
    if (sweep.has_overlay) p["overlay_ueV"] = sweep.overlays[k];
    points.push_back(std::move(p));
  }
  j["points"] = std::move(points);
  j["provenance"] = provenance_json(sweep.provenance);
  return j;
}

SpectrumRun spectrum_run_from_json(const nlohmann::json& j) {
  if (j.at("kind") != "spectrum") throw std::runtime_error("not a spectrum document");
  SpectrumRun run;
  run.trace = trace_from(j.at("trace"));
  run.has_overlay = j.contains("overlay_ueV");
  if (run.has_overlay) run.overlay = j.at("overlay_ueV").get<std::vector<double>>();
  run.provenance = provenance_from(j.at("provenance"));
  return run;
}

SweepResult sweep_from_json(const nlohmann::json& j) {
  if (j.at("kind") != "sweep") throw std::runtime_error("not a sweep document");
  SweepResult s;
  s.parameter = parameter_from(j.at("parameter").get<std::string>());
  s.axis = j.at("axis").get<std::vector<double>>();
  s.has_overlay = j.at("has_overlay").get<bool>();
  for (const auto& p : j.at("points")) {
    s.errors.push_back(p.at("error").get<std::string>());
    s.traces.push_back(trace_from(p.at("trace")));
    s.overlays.push_back(s.has_overlay ? p.at("overlay_ueV").get<std::vector<double>>()
                                       : std::vector<double>{});
  }
  if (s.traces.size() != s.axis.size()) throw std::runtime_error("point count does not match axis");
  s.provenance = provenance_from(j.at("provenance"));
  return s;
}

namespace {

template <typename Result>
std::vector<std::filesystem::path> export_impl(const Result& r, bool overlay, ExportFormat format,
                                               const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
  std::vector<std::filesystem::path> written;
  if (format == ExportFormat::json) {
    const auto path = dir / "spectrum.json";
    auto os = open_out(path);
    os << to_json(r).dump(1) << '\n';
    close_out(os, path);
    written.push_back(path);
    return written;
  }
  {
    const auto path = dir / "spectrum.csv";
    auto os = open_out(path);
    if constexpr (std::is_same_v<Result, SpectrumRun>) {
      write_csv(os, r.trace);
    } else {
      write_csv(os, r);
    }
    close_out(os, path);
    written.push_back(path);
  }
  if (overlay) {
    const auto path = dir / "overlay.csv";
    auto os = open_out(path);
    write_overlay_csv(os, r);
    close_out(os, path);
    written.push_back(path);
  }
  return written;
}

}  // namespace

std::vector<std::filesystem::path> export_result(const SpectrumRun& run, ExportFormat format,
                                                 const std::filesystem::path& dir) {
  return export_impl(run, run.has_overlay, format, dir);
}

std::vector<std::filesystem::path> export_result(const SweepResult& sweep, ExportFormat format,
                                                 const std::filesystem::path& dir) {
  return export_impl(sweep, sweep.has_overlay, format, dir);
}

}  // namespace bichrom
