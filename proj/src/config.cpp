// Copyright 2026 The qframes Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qframes/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "qframes/tolerances.hpp"

namespace qframes {

const char* to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::kEpr: return "epr";
    case ScenarioKind::kBell: return "bell";
    case ScenarioKind::kExtended: return "extended";
    case ScenarioKind::kChshScan: return "chsh-scan";
    case ScenarioKind::kVerify: return "verify";
  }
  return "?";
}

const char* to_string(AngleUnit unit) { return unit == AngleUnit::kRad ? "rad" : "deg"; }
const char* to_string(OutputFormat format) {
  return format == OutputFormat::kRecords ? "records" : "csv";
}

std::optional<ScenarioKind> parse_kind(const std::string& s) {
  for (auto k : {ScenarioKind::kEpr, ScenarioKind::kBell, ScenarioKind::kExtended,
                 ScenarioKind::kChshScan, ScenarioKind::kVerify}) {
    if (s == to_string(k)) return k;
  }
  return std::nullopt;
}

std::optional<AngleUnit> parse_angle_unit(const std::string& s) {
  if (s == "rad") return AngleUnit::kRad;
  if (s == "deg") return AngleUnit::kDeg;
  return std::nullopt;
}

std::optional<OutputFormat> parse_format(const std::string& s) {
  if (s == "records") return OutputFormat::kRecords;
  if (s == "csv") return OutputFormat::kCsv;
  return std::nullopt;
}

double to_radians(double value, AngleUnit unit) {
  return unit == AngleUnit::kRad ? value : value / 180.0 * std::numbers::pi;
}

ScenarioConfig default_config(ScenarioKind kind, AngleUnit unit) {
  const double r = 1.0 / std::numbers::sqrt2;
  ScenarioConfig c;
  c.kind = kind;
  c.unit = unit;
  c.amplitudes = kind == ScenarioKind::kEpr ? std::vector<Complex>{r, r}
                                            : std::vector<Complex>{r, -r};
  const bool deg = unit == AngleUnit::kDeg;
  c.theta2 = deg ? 45.0 : std::numbers::pi / 4.0;
  if (kind == ScenarioKind::kChshScan) c.grid = GridSpec{0.0, deg ? 360.0 : 2.0 * std::numbers::pi, 25};
  return c;
}

namespace {

std::string where(const YAML::Node& node, const std::string& source) {
  const auto mark = node.Mark();
  if (mark.line < 0) return source;
  return source + ":" + std::to_string(mark.line + 1);
}

[[noreturn]] void fail(const YAML::Node& node, const std::string& source, const std::string& field,
                       const std::string& message) {
  throw ConfigError(where(node, source) + ": field '" + field + "': " + message);
}

void check_keys(const YAML::Node& map, const std::string& source, const std::string& prefix,
                const std::set<std::string>& allowed) {
  if (!map.IsMap()) fail(map, source, prefix, "expected a table");
  for (const auto& kv : map) {
    const auto key = kv.first.as<std::string>();
    if (!allowed.contains(key)) {
      fail(kv.first, source, prefix.empty() ? key : prefix + "." + key, "unknown key");
    }
  }
}

template <typename T>
T scalar(const YAML::Node& node, const std::string& source, const std::string& field,
         const char* type) {
  if (!node.IsScalar()) fail(node, source, field, std::string("expected ") + type);
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    fail(node, source, field, std::string("expected ") + type + ", got '" + node.Scalar() + "'");
  }
}

double finite(const YAML::Node& node, const std::string& source, const std::string& field) {
  const double v = scalar<double>(node, source, field, "a number");
  if (!std::isfinite(v)) fail(node, source, field, "must be finite");
  return v;
}

Complex amplitude(const YAML::Node& node, const std::string& source, const std::string& field) {
  if (node.IsScalar()) return {finite(node, source, field), 0.0};
  if (node.IsSequence() && node.size() == 2) {
    return {finite(node[0], source, field + "[0]"), finite(node[1], source, field + "[1]")};
  }
  fail(node, source, field, "expected a number or a [re, im] pair");
}

}  // namespace

ParsedConfig parse_config(const std::string& text, const std::string& source,
                          const ParseOptions& options) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(source + ":" + std::to_string(e.mark.line + 1) + ":" +
                      std::to_string(e.mark.column + 1) + ": " + e.msg);
  }
  const AngleUnit fallback_unit = options.unit.value_or(AngleUnit::kRad);
  ParsedConfig out;
  out.config = default_config(options.kind.value_or(ScenarioKind::kBell), fallback_unit);
  if (root.IsNull()) return out;
  check_keys(root, source, "",
             {"kind", "seed", "shots", "amplitudes", "angles", "grid", "model", "output"});

  ScenarioConfig& c = out.config;
  if (root["kind"]) {
    const auto s = scalar<std::string>(root["kind"], source, "kind", "a string");
    const auto k = parse_kind(s);
    if (!k) fail(root["kind"], source, "kind", "unknown scenario kind '" + s + "'");
    if (options.kind && *options.kind != *k) {
      fail(root["kind"], source, "kind",
           std::string("file is for '") + s + "' but '" + to_string(*options.kind) + "' was requested");
    }
    c.kind = *k;
    c.kind_explicit = true;
  }
  c = [&] {
    auto d = default_config(c.kind, fallback_unit);
    d.kind_explicit = c.kind_explicit;
    return d;
  }();

  if (root["seed"]) c.seed = scalar<std::uint64_t>(root["seed"], source, "seed", "an unsigned integer");
  if (root["shots"]) c.shots = scalar<std::size_t>(root["shots"], source, "shots", "an unsigned integer");
  if (root["model"]) {
    c.model = scalar<std::string>(root["model"], source, "model", "a string");
    if (c.model != "quantum" && c.model != "factorized") {
      fail(root["model"], source, "model", "expected 'quantum' or 'factorized'");
    }
  }

  if (const auto amps = root["amplitudes"]) {
    if (!amps.IsSequence() || amps.size() != 2) {
      fail(amps, source, "amplitudes", "expected a list of two amplitudes");
    }
    c.amplitudes.clear();
    for (std::size_t i = 0; i < amps.size(); ++i) {
      c.amplitudes.push_back(amplitude(amps[i], source, "amplitudes[" + std::to_string(i) + "]"));
    }
    double total = 0.0;
    for (const auto& z : c.amplitudes) total += std::norm(z);
    const double dev = std::abs(total - 1.0);
    if (dev > tol::kAmplitudeReject) {
      fail(amps, source, "amplitudes",
           "not normalized (sum of squared moduli " + std::to_string(total) + ")");
    }
    if (dev > tol::kAmplitudeWarn) {
      const double n = std::sqrt(total);
      for (auto& z : c.amplitudes) z /= n;
      std::ostringstream msg;
      msg << where(amps, source) << ": amplitudes renormalized (deviation " << dev << ")";
      out.warnings.push_back(msg.str());
    }
  }

  std::optional<AngleUnit> unit;
  if (const auto angles = root["angles"]) {
    check_keys(angles, source, "angles", {"unit", "delta", "theta1", "theta2"});
    if (angles["unit"]) {
      const auto s = scalar<std::string>(angles["unit"], source, "angles.unit", "a string");
      unit = parse_angle_unit(s);
      if (!unit) fail(angles["unit"], source, "angles.unit", "expected 'rad' or 'deg'");
      if (options.unit && *options.unit != *unit) {
        fail(angles["unit"], source, "angles.unit",
             std::string("file says '") + s + "' but '" + to_string(*options.unit) +
                 "' was requested");
      }
    }
  }
  if (unit) {
    const auto d = default_config(c.kind, *unit);
    c.unit = *unit;
    c.unit_explicit = true;
    c.theta2 = d.theta2;
    c.grid = d.grid;
  }
  if (const auto angles = root["angles"]) {
    if (angles["delta"]) c.delta = finite(angles["delta"], source, "angles.delta");
    if (angles["theta1"]) c.theta1 = finite(angles["theta1"], source, "angles.theta1");
    if (angles["theta2"]) c.theta2 = finite(angles["theta2"], source, "angles.theta2");
  }

  if (const auto grid = root["grid"]) {
    check_keys(grid, source, "grid", {"start", "stop", "steps"});
    GridSpec g = c.grid ? *c.grid : *default_config(ScenarioKind::kChshScan, c.unit).grid;
    if (grid["start"]) g.start = finite(grid["start"], source, "grid.start");
    if (grid["stop"]) g.stop = finite(grid["stop"], source, "grid.stop");
    if (grid["steps"]) {
      const auto steps = scalar<long long>(grid["steps"], source, "grid.steps", "an integer");
      if (steps < 1) fail(grid["steps"], source, "grid.steps", "must be at least 1");
      g.steps = static_cast<std::size_t>(steps);
    }
    c.grid = g;
  }

  if (const auto output = root["output"]) {
    check_keys(output, source, "output", {"path", "format"});
    if (output["path"]) c.output_path = scalar<std::string>(output["path"], source, "output.path", "a string");
    if (output["format"]) {
      const auto s = scalar<std::string>(output["format"], source, "output.format", "a string");
      const auto f = parse_format(s);
      if (!f) fail(output["format"], source, "output.format", "expected 'records' or 'csv'");
      c.format = *f;
    }
  }
  return out;
}

ParsedConfig load_config(const std::string& path, const ParseOptions& options) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config file");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path, options);
}

std::string serialize_config(const ScenarioConfig& c) {
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  out << YAML::BeginMap;
  if (c.kind_explicit) out << YAML::Key << "kind" << YAML::Value << to_string(c.kind);
  out << YAML::Key << "seed" << YAML::Value << c.seed;
  out << YAML::Key << "shots" << YAML::Value << c.shots;
  out << YAML::Key << "model" << YAML::Value << c.model;
  out << YAML::Key << "amplitudes" << YAML::Value << YAML::BeginSeq;
  for (const auto& z : c.amplitudes) {
    out << YAML::Flow << YAML::BeginSeq << z.real() << z.imag() << YAML::EndSeq;
  }
  out << YAML::EndSeq;
  out << YAML::Key << "angles" << YAML::Value << YAML::BeginMap;
  if (c.unit_explicit) out << YAML::Key << "unit" << YAML::Value << to_string(c.unit);
  out << YAML::Key << "delta" << YAML::Value << c.delta;
  out << YAML::Key << "theta1" << YAML::Value << c.theta1;
  out << YAML::Key << "theta2" << YAML::Value << c.theta2;
  out << YAML::EndMap;
  if (c.grid) {
    out << YAML::Key << "grid" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "start" << YAML::Value << c.grid->start;
    out << YAML::Key << "stop" << YAML::Value << c.grid->stop;
    out << YAML::Key << "steps" << YAML::Value << c.grid->steps;
    out << YAML::EndMap;
  }
  out << YAML::Key << "output" << YAML::Value << YAML::BeginMap;
  if (!c.output_path.empty()) out << YAML::Key << "path" << YAML::Value << c.output_path;
  out << YAML::Key << "format" << YAML::Value << to_string(c.format);
  out << YAML::EndMap;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace qframes
