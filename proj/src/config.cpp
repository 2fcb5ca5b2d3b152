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

#include "bichrom/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace bichrom {
namespace {

using Kind = ConfigError::Kind;

std::string describe(Kind kind, const std::string& key, int line, const std::string& detail) {
  std::ostringstream os;
  if (line > 0) os << "line " << line << ": ";
  os << to_string(kind);
  if (!key.empty()) os << " '" << key << "'";
  if (!detail.empty()) os << ": " << detail;
  return os.str();
}

struct Value {
  enum class Type { number, boolean, text } type = Type::number;
  double number = 0.0;
  bool integral = false;
  bool flag = false;
  std::string text;
  int line = 0;
};

struct Violation {
  std::string what;
};

enum class Expect { real, count, boolean, text };

struct Setter {
  Expect expect;
  std::function<void(RunConfig&, const Value&)> apply;
};

struct Pending {
  RunConfig cfg;
  std::optional<SweepAxis> sweep;
  std::set<std::string> sweep_keys;
};

[[noreturn]] void violation(const std::string& key, const Value& v, const std::string& what) {
  throw ConfigError(Kind::constraint_violation, key, v.line, what);
}


template <typename F>
Setter real_setter(F assign, std::function<bool(double)> ok = {}, std::string what = {}) {
  return {Expect::real, [assign, ok, what](RunConfig& c, const Value& v) {
            if (!std::isfinite(v.number)) throw Violation{"must be finite"};
            if (ok && !ok(v.number)) throw Violation{what};
            assign(c, v.number);
          }};
}

template <typename F>
Setter count_setter(F assign, double lo, std::string what) {
  return {Expect::count, [assign, lo, what](RunConfig& c, const Value& v) {
            if (v.number < lo || v.number > 1e9) throw Violation{what};
            assign(c, v.number);
          }};
}

const auto non_negative = [](double x) { return x >= 0.0; };
const auto positive = [](double x) { return x > 0.0; };

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = [] {
    std::map<std::string, Setter> t;
    t["drive.omega1_ueV"] = real_setter([](RunConfig& c, double x) { c.drive.omega1 = x; }, non_negative, "must be >= 0");
    t["drive.omega2_ueV"] = real_setter([](RunConfig& c, double x) { c.drive.omega2 = x; }, non_negative, "must be >= 0");
    t["drive.delta1_ueV"] = real_setter([](RunConfig& c, double x) { c.drive.delta1 = x; });
    t["drive.delta2_ueV"] = real_setter([](RunConfig& c, double x) { c.drive.delta2 = x; });
    t["drive.phi_rad"] = real_setter([](RunConfig& c, double x) { c.drive.phi = x; });
    t["drive.frame_origin_ueV"] = real_setter([](RunConfig& c, double x) { c.drive.frame_origin = x; });

    t["dissipation.gamma_ueV"] = real_setter([](RunConfig& c, double x) { c.dissipation.gamma = x; }, positive, "must be > 0");
    t["dissipation.gamma_prime_ueV"] = real_setter([](RunConfig& c, double x) { c.dissipation.gamma_prime = x; }, non_negative, "must be >= 0");

    t["numerics.step_max_ps"] = real_setter([](RunConfig& c, double x) { c.propagator.step_max = x; }, non_negative, "must be >= 0");
    t["numerics.rel_tol"] = real_setter([](RunConfig& c, double x) { c.propagator.rel_tol = x; }, positive, "must be > 0");
    t["numerics.abs_tol"] = real_setter([](RunConfig& c, double x) { c.propagator.abs_tol = x; }, positive, "must be > 0");
    t["numerics.transient_factor"] = real_setter([](RunConfig& c, double x) { c.propagator.transient_factor = x; }, non_negative, "must be >= 0");
    t["numerics.ss_tol"] = real_setter([](RunConfig& c, double x) { c.propagator.ss_tol = x; }, positive, "must be > 0");
    t["numerics.period_samples"] = count_setter([](RunConfig& c, double x) { c.propagator.period_samples = static_cast<int>(x); }, 1, "must be >= 1");
    t["numerics.max_periods"] = count_setter([](RunConfig& c, double x) { c.propagator.max_periods = static_cast<int>(x); }, 1, "must be >= 1");

    t["spectrum.omega_min_ueV"] = real_setter([](RunConfig& c, double x) { c.omega_min = x; });
    t["spectrum.omega_max_ueV"] = real_setter([](RunConfig& c, double x) { c.omega_max = x; });
    t["spectrum.points"] = count_setter([](RunConfig& c, double x) { c.omega_points = static_cast<std::size_t>(x); }, 2, "must be >= 2");
    t["spectrum.tau_max_ps"] = real_setter([](RunConfig& c, double x) { c.spectrum.tau_max = x; }, non_negative, "must be >= 0");
    t["spectrum.tail_tol"] = real_setter([](RunConfig& c, double x) { c.spectrum.tail_tol = x; }, positive, "must be > 0");
    t["spectrum.window_hwhm_ueV"] = real_setter([](RunConfig& c, double x) { c.spectrum.window_hwhm = x; }, non_negative, "must be >= 0");
    t["spectrum.sample_offset_ps"] = real_setter([](RunConfig& c, double x) { c.spectrum.sample_offset = x; });

    t["floquet.order"] = count_setter([](RunConfig& c, double x) { c.floquet.order = static_cast<int>(x); }, 0, "must be in [0, 50]");
    t["floquet.overlay"] = {Expect::boolean, [](RunConfig& c, const Value& v) { c.overlay = v.flag; }};

    t["phonon.alpha_ps2"] = real_setter([](RunConfig& c, double x) { c.phonon.alpha = x; }, non_negative, "must be >= 0");
    t["phonon.temperature_K"] = real_setter([](RunConfig& c, double x) { c.phonon.temperature = x; }, positive, "must be > 0");
    t["phonon.omega_b_ueV"] = real_setter([](RunConfig& c, double x) { c.phonon.omega_b = x; }, positive, "must be > 0");
    return t;
  }();
  return table;
}

const std::set<std::string> kSweepKeys = {"sweep.parameter", "sweep.min", "sweep.max",
                                          "sweep.points", "sweep.scale"};

void check_type(const std::string& key, Expect expect, const Value& v) {
  const char* want = nullptr;
  switch (expect) {
    case Expect::real:
      if (v.type != Value::Type::number) want = "number";
      break;
    case Expect::count:
      if (v.type != Value::Type::number || !v.integral) want = "integer";
      break;
    case Expect::boolean:
      if (v.type != Value::Type::boolean) want = "boolean";
      break;
    case Expect::text:
      if (v.type != Value::Type::text) want = "string";
      break;
  }
  if (want) throw ConfigError(Kind::type_mismatch, key, v.line, std::string("expected ") + want);
}

void apply_sweep(Pending& st, const std::string& key, const Value& v) {
  if (!st.sweep) st.sweep.emplace();
  SweepAxis& ax = *st.sweep;
  st.sweep_keys.insert(key);
  if (key == "sweep.parameter") {
    check_type(key, Expect::text, v);
    if (v.text == "omega2") ax.parameter = SweepParameter::omega2;
    else if (v.text == "delta2") ax.parameter = SweepParameter::delta2;
    else if (v.text == "delta") ax.parameter = SweepParameter::delta;
    else violation(key, v, "must be one of omega2, delta2, delta");
  } else if (key == "sweep.scale") {
    check_type(key, Expect::text, v);
    if (v.text == "linear") ax.scale = SweepScale::linear;
    else if (v.text == "quadratic-in-power" || v.text == "quadratic") ax.scale = SweepScale::quadratic_in_power;
    else violation(key, v, "must be linear or quadratic-in-power");
  } else if (key == "sweep.points") {
    check_type(key, Expect::count, v);
    if (v.number < 2 || v.number > 1e6) violation(key, v, "must be >= 2");
    ax.points = static_cast<std::size_t>(v.number);
  } else {
    check_type(key, Expect::real, v);
    if (!std::isfinite(v.number)) violation(key, v, "must be finite");
    (key == "sweep.min" ? ax.min : ax.max) = v.number;
  }
}

void assign(Pending& st, const std::string& key, const Value& v) {
  if (kSweepKeys.count(key)) {
    apply_sweep(st, key, v);
    return;
  }
  const auto& table = setters();
  auto it = table.find(key);
  if (it == table.end()) throw ConfigError(Kind::unknown_key, key, v.line, "");
  check_type(key, it->second.expect, v);
  try {
    it->second.apply(st.cfg, v);
  } catch (const Violation& e) {
    throw ConfigError(Kind::constraint_violation, key, v.line, e.what);
  }
}

RunConfig finish(Pending st) {
  RunConfig& c = st.cfg;
  if (!(c.omega_max > c.omega_min)) {
    throw ConfigError(Kind::constraint_violation, "spectrum.omega_max_ueV", 0, "must exceed spectrum.omega_min_ueV");
  }
  if (c.floquet.order > kMaxFloquetOrder) {
    throw ConfigError(Kind::constraint_violation, "floquet.order", 0, "must be in [0, 50]");
  }
  if (st.sweep) {
    for (const char* k : {"sweep.parameter", "sweep.min", "sweep.max", "sweep.points"}) {
      if (!st.sweep_keys.count(k)) throw ConfigError(Kind::constraint_violation, k, 0, "missing");
    }
    const SweepAxis& ax = *st.sweep;
    if (ax.scale == SweepScale::quadratic_in_power) {
      if (ax.parameter != SweepParameter::omega2) {
        throw ConfigError(Kind::constraint_violation, "sweep.scale", 0, "quadratic-in-power applies to omega2 only");
      }
      if (ax.min < 0.0) throw ConfigError(Kind::constraint_violation, "sweep.min", 0, "must be >= 0");
    }
    if (ax.parameter == SweepParameter::omega2 && (ax.min < 0.0 || ax.max < 0.0)) {
      throw ConfigError(Kind::constraint_violation, "sweep.min", 0, "omega2 must be >= 0");
    }
    c.sweep = ax;
  }
  return std::move(st.cfg);
}

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

Value parse_scalar(const std::string& raw, int line) {
  Value v;
  v.line = line;
  if (raw.size() >= 2 && raw.front() == '"' && raw.back() == '"') {
    v.type = Value::Type::text;
    v.text = raw.substr(1, raw.size() - 2);
    return v;
  }
  if (raw == "true" || raw == "false") {
    v.type = Value::Type::boolean;
    v.flag = raw == "true";
    return v;
  }
  const char* first = raw.data();
  const char* last = raw.data() + raw.size();
  if (!raw.empty() && *first == '+') ++first;
  double x = 0.0;
  auto [ptr, ec] = std::from_chars(first, last, x);
  if (ec == std::errc() && ptr == last) {
    v.type = Value::Type::number;
    v.number = x;
    v.integral = raw.find_first_of(".eE") == std::string::npos;
    return v;
  }
  v.type = Value::Type::text;
  v.text = raw;
  return v;
}

RunConfig parse_flat(std::string_view text) {
  Pending st;
  std::map<std::string, int> seen;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    bool quoted = false;
    std::size_t cut = line.size();
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') quoted = !quoted;
      if (line[i] == '#' && !quoted) {
        cut = i;
        break;
      }
    }
    const std::string body = trim(line.substr(0, cut));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ConfigError(Kind::syntax, "", line_no, "expected key = value");
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string raw = trim(std::string_view(body).substr(eq + 1));
    if (key.empty() || raw.empty()) throw ConfigError(Kind::syntax, key, line_no, "expected key = value");
    auto [it, fresh] = seen.emplace(key, line_no);
    if (!fresh) {
      throw ConfigError(Kind::duplicate_key, key, line_no,
                        "first set on line " + std::to_string(it->second));
    }
    assign(st, key, parse_scalar(raw, line_no));
  }
  return finish(std::move(st));
}

void flatten(const nlohmann::json& j, const std::string& prefix,
             std::vector<std::pair<std::string, Value>>& out) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    const auto& val = it.value();
    Value v;
    if (val.is_object()) {
      flatten(val, key, out);
      continue;
    } else if (val.is_boolean()) {
      v.type = Value::Type::boolean;
      v.flag = val.get<bool>();
    } else if (val.is_number()) {
      v.type = Value::Type::number;
      v.number = val.get<double>();
      v.integral = val.is_number_integer();
    } else if (val.is_string()) {
      v.type = Value::Type::text;
      v.text = val.get<std::string>();
    } else {
      throw ConfigError(Kind::type_mismatch, key, 0, "arrays and null are not allowed");
    }
    out.emplace_back(key, v);
  }
}

RunConfig parse_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(Kind::syntax, "", 0, e.what());
  }
  if (!j.is_object()) throw ConfigError(Kind::syntax, "", 0, "top level must be an object");
  std::vector<std::pair<std::string, Value>> flat;
  flatten(j, "", flat);
  Pending st;
  std::set<std::string> seen;
  for (const auto& [key, v] : flat) {
    if (!seen.insert(key).second) throw ConfigError(Kind::duplicate_key, key, 0, "");
    assign(st, key, v);
  }
  return finish(std::move(st));
}

}  // namespace

ConfigError::ConfigError(Kind kind, std::string key, int line, const std::string& detail)
    : std::runtime_error(describe(kind, key, line, detail)),
      kind_(kind),
      key_(std::move(key)),
      line_(line) {}

const char* to_string(ConfigError::Kind kind) {
  switch (kind) {
    case Kind::syntax: return "syntax error";
    case Kind::unknown_key: return "unknown key";
    case Kind::type_mismatch: return "type mismatch";
    case Kind::constraint_violation: return "constraint violation";
    case Kind::duplicate_key: return "duplicate key";
  }
  return "config error";
}

const char* to_string(SweepParameter p) {
  switch (p) {
    case SweepParameter::omega2: return "omega2";
    case SweepParameter::delta2: return "delta2";
    case SweepParameter::delta: return "delta";
  }
  return "?";
}

RunConfig parse_config(std::string_view text) {
  for (char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    if (ch == '{') return parse_json(text);
    break;
  }
  return parse_flat(text);
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(Kind::syntax, "", 0, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::vector<double> omega_grid(const RunConfig& cfg) {
  return uniform_grid(cfg.omega_min, cfg.omega_max, cfg.omega_points);
}

}  // namespace bichrom
