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

// bichrom: resonance-fluorescence spectra of a bichromatically driven
// two-level emitter.
//
//   bichrom spectrum    --config sideband_dressing.cfg --out out/ [--format csv|json] [--overlay-order N]
//   bichrom sweep       --config omega2_sweep_red.cfg --out out/ [--threads N]
//   bichrom floquet     --config sideband_dressing.cfg [--overlay-order N]
//   bichrom phonon-rate [--config sideband_dressing.cfg] [--rabi R]
//
// Exit status: 0 ok, 1 configuration error, 2 numerical failure,
// 3 some sweep points failed. Logs go to stderr; data to files or stdout.

#include <algorithm>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "bichrom/config.hpp"
#include "bichrom/error.hpp"
#include "bichrom/export.hpp"
#include "bichrom/floquet.hpp"
#include "bichrom/phonon.hpp"
#include "bichrom/pipeline.hpp"

namespace {

enum Exit { kOk = 0, kConfig = 1, kNumerical = 2, kPartial = 3 };

void log(const std::string& msg) { std::cerr << "bichrom: " << msg << '\n'; }

struct Options {
  std::string config;
  std::string out;
  std::string format = "csv";
  unsigned threads = 1;
  std::optional<int> overlay_order;
  std::optional<double> rabi;
};

bichrom::RunConfig load(const Options& o) {
  bichrom::RunConfig cfg = bichrom::load_config(o.config);
  if (o.overlay_order) {
    if (*o.overlay_order < 0 || *o.overlay_order > bichrom::kMaxFloquetOrder) {
      throw bichrom::ConfigError(bichrom::ConfigError::Kind::constraint_violation,
                                 "--overlay-order", 0, "must be in [0, 50]");
    }
    cfg.floquet.order = *o.overlay_order;
    cfg.overlay = true;
  }
  return cfg;
}

bichrom::ExportFormat format_of(const Options& o) {
  return o.format == "json" ? bichrom::ExportFormat::json : bichrom::ExportFormat::csv;
}

int cmd_spectrum(const Options& o) {
  auto cfg = load(o);
  if (cfg.sweep) {
    log("config has a sweep axis; use the sweep subcommand");
    return kConfig;
  }
  log("spectrum: " + std::to_string(cfg.omega_points) + " points, hash " + bichrom::config_hash(cfg));
  const auto run = bichrom::run_spectrum(cfg);
  if (o.out.empty()) {
    if (format_of(o) == bichrom::ExportFormat::json) {
      std::cout << bichrom::to_json(run).dump(1) << '\n';
    } else {
      bichrom::write_csv(std::cout, run.trace);
    }
  } else {
    for (const auto& p : bichrom::export_result(run, format_of(o), o.out)) log("wrote " + p.string());
  }
  log("done in " + bichrom::format_double(run.provenance.wall_seconds) + " s");
  return kOk;
}

int cmd_sweep(const Options& o) {
  auto cfg = load(o);
  if (!cfg.sweep) {
    log("config has no sweep axis");
    return kConfig;
  }
  bichrom::SweepOptions so;
  so.threads = o.threads ? o.threads : std::max(1u, std::thread::hardware_concurrency());
  log(std::string("sweep over ") + bichrom::to_string(cfg.sweep->parameter) + ", " +
      std::to_string(cfg.sweep->points) + " points, " + std::to_string(so.threads) + " threads");
  const auto res = bichrom::run_sweep(cfg, so);
  for (std::size_t i = 0; i < res.axis.size(); ++i) {
    if (!res.errors[i].empty()) {
      log("point " + std::to_string(i) + " (" + bichrom::format_double(res.axis[i]) +
          ") failed: " + res.errors[i]);
    }
  }
  if (o.out.empty()) {
    if (format_of(o) == bichrom::ExportFormat::json) {
      std::cout << bichrom::to_json(res).dump(1) << '\n';
    } else {
      bichrom::write_csv(std::cout, res);
    }
  } else {
    for (const auto& p : bichrom::export_result(res, format_of(o), o.out)) log("wrote " + p.string());
  }
  log("done in " + bichrom::format_double(res.provenance.wall_seconds) + " s");
  if (res.failures() == res.axis.size()) return kNumerical;
  return res.failures() ? kPartial : kOk;
}

int cmd_floquet(const Options& o) {
  auto cfg = load(o);
  if (cfg.sweep) {
    std::cout << "axis_value,transition_ueV\n";
    for (double a : bichrom::axis_values(*cfg.sweep)) {
      const auto p = bichrom::apply_axis(cfg.drive, cfg.sweep->parameter, a);
      if (p.beat() == 0.0) continue;
      for (double w : bichrom::floquet_overlay(p, cfg.floquet, cfg.omega_min, cfg.omega_max)) {
        std::cout << bichrom::format_double(a) << ',' << bichrom::format_double(w) << '\n';
      }
    }
    return kOk;
  }
  std::cout << "transition_ueV\n";
  for (double w : bichrom::floquet_overlay(cfg.drive, cfg.floquet, cfg.omega_min, cfg.omega_max)) {
    std::cout << bichrom::format_double(w) << '\n';
  }
  return kOk;
}

int cmd_phonon(const Options& o) {
  bichrom::RunConfig cfg;
  if (!o.config.empty()) cfg = bichrom::load_config(o.config);
  const double rabi = o.rabi ? *o.rabi : std::max(cfg.drive.omega1, cfg.drive.omega2);
  const double rate = bichrom::dephasing_rate(cfg.phonon, rabi);
  log("rabi energy " + bichrom::format_double(rabi) + " ueV");
  std::cout << bichrom::format_double(rate) << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Resonance fluorescence of a bichromatically driven two-level emitter"};
  app.set_version_flag("--version", BICHROM_VERSION_STRING);
  app.require_subcommand(1);

  Options o;
  auto add_common = [&](CLI::App* sub, bool needs_config) {
    auto* c = sub->add_option("--config", o.config, "configuration file")->check(CLI::ExistingFile);
    if (needs_config) c->required();
    sub->add_option("--overlay-order", o.overlay_order, "Floquet order N for the transition overlay");
  };

  auto* spectrum = app.add_subcommand("spectrum", "single spectrum");
  add_common(spectrum, true);
  spectrum->add_option("--out", o.out, "output directory (stdout if omitted)");
  spectrum->add_option("--format", o.format)->check(CLI::IsMember({"csv", "json"}));

  auto* sweep = app.add_subcommand("sweep", "spectra along the configured sweep axis");
  add_common(sweep, true);
  sweep->add_option("--out", o.out, "output directory (stdout if omitted)");
  sweep->add_option("--format", o.format)->check(CLI::IsMember({"csv", "json"}));
  sweep->add_option("--threads", o.threads, "worker threads (0: hardware concurrency)");

  auto* floquet = app.add_subcommand("floquet", "Floquet transition energies only");
  add_common(floquet, true);

  auto* phonon = app.add_subcommand("phonon-rate", "phonon pure-dephasing estimate in ueV");
  phonon->add_option("--config", o.config, "configuration file")->check(CLI::ExistingFile);
  phonon->add_option("--rabi", o.rabi, "Rabi energy in ueV (default max(omega1, omega2))");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }

  try {
    if (*spectrum) return cmd_spectrum(o);
    if (*sweep) return cmd_sweep(o);
    if (*floquet) return cmd_floquet(o);
    if (*phonon) return cmd_phonon(o);
  } catch (const bichrom::ConfigError& e) {
    log(e.what());
    return kConfig;
  } catch (const bichrom::DomainError& e) {
    log(e.what());
    return kConfig;
  } catch (const bichrom::NumericalError& e) {
    log(e.what());
    return kNumerical;
  } catch (const std::exception& e) {
    log(e.what());
    return kNumerical;
  }
  return kOk;
}
