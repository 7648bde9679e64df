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

#include "qframes/report.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <sstream>

#include <json.hpp>

namespace qframes {

namespace {

using nlohmann::json;

std::string dump(const json& j) { return j.dump(-1, ' ', false, json::error_handler_t::strict); }

json complex_pair(Complex z) { return json::array({z.real(), z.imag()}); }

json conventions() {
  return {
      {"ordering", "row-major, first-listed subsystem most significant"},
      {"spin", "index 0 = up, index 1 = down"},
      {"axis_basis", "outcome j at angle theta: rotated_spin_basis(theta)[j], "
                     "(cos(t/2), -sin(t/2)) and (sin(t/2), cos(t/2))"},
      {"schmidt", "phi_P1 = (up, down), phi_P2 = (down, up)"},
      {"pointer", "ready = |0>, outcome j = |j+1>"},
      {"angles", "radians internally"},
      {"correlator", "E = P00 - P01 - P10 + P11"},
  };
}

}  // namespace

Report::Report(const ScenarioConfig& config, std::vector<std::string> warnings)
    : kind_(to_string(config.kind)) {
  json inputs = {
      {"kind", kind_},
      {"amplitudes", json::array()},
      {"angles",
       {{"unit", to_string(config.unit)},
        {"delta", config.delta},
        {"theta1", config.theta1},
        {"theta2", config.theta2},
        {"delta_rad", to_radians(config.delta, config.unit)},
        {"theta1_rad", to_radians(config.theta1, config.unit)},
        {"theta2_rad", to_radians(config.theta2, config.unit)}}},
      {"model", config.model},
      {"shots", config.shots},
      {"format", to_string(config.format)},
  };
  for (const auto& z : config.amplitudes) inputs["amplitudes"].push_back(complex_pair(z));
  if (config.grid) {
    inputs["grid"] = {{"start", config.grid->start},
                      {"stop", config.grid->stop},
                      {"steps", config.grid->steps}};
  }
  json header = {{"type", "header"},
                 {"library", "qframes"},
                 {"version", QFRAMES_VERSION},
                 {"seed", config.seed},
                 {"inputs", inputs},
                 {"conventions", conventions()},
                 {"warnings", warnings}};
  lines_.push_back(dump(header));
}

void Report::add_distribution(const std::string& name, const JointDistribution& jd,
                              const std::vector<std::string>& basis) {
  json systems = json::array();
  for (const auto& s : jd.systems()) systems.push_back(s.to_string());
  json entries = json::array();
  const auto probs = jd.probabilities();
  for (std::size_t f = 0; f < probs.size(); ++f) {
    const auto idx = jd.unflatten(f);
    json labels = json::array();
    std::string joined;
    for (std::size_t a = 0; a < idx.size(); ++a) {
      const auto& label = jd.axes()[a][idx[a]];
      labels.push_back(label);
      joined += (a ? "|" : "") + label;
    }
    entries.push_back({{"labels", labels}, {"p", probs[f]}});
    std::ostringstream row;
    row.precision(17);
    row << name << "," << joined << "," << probs[f];
    csv_rows_.push_back(row.str());
  }
  json rec = {{"type", "distribution"},
              {"name", name},
              {"systems", systems},
              {"axes", jd.axes()},
              {"basis", basis},
              {"basis_ambiguous", jd.basis_ambiguous()},
              {"clamped", jd.clamped_count()},
              {"total", jd.total()},
              {"entries", entries}};
  lines_.push_back(dump(rec));
}

void Report::add_checks(const std::vector<Check>& checks) {
  for (const auto& c : checks) {
    checks_.push_back(c);
    lines_.push_back(dump({{"type", "check"},
                           {"name", c.name},
                           {"deviation", c.deviation},
                           {"tolerance", c.tolerance},
                           {"passed", c.passed}}));
  }
}

void Report::add_value(const std::string& name, double value) {
  lines_.push_back(dump({{"type", "value"}, {"name", name}, {"value", value}}));
}

void Report::add_state(const std::string& name, const std::vector<std::string>& subsystems,
                       std::span<const Complex> amplitudes) {
  json amps = json::array();
  for (const auto& z : amplitudes) amps.push_back(complex_pair(z));
  lines_.push_back(dump(
      {{"type", "state"}, {"name", name}, {"subsystems", subsystems}, {"amplitudes", amps}}));
}

void Report::add_chsh(const std::string& name, const ChshReport& r) {
  lines_.push_back(dump({{"type", "chsh"},
                         {"name", name},
                         {"model", to_string(r.model)},
                         {"angles", {{"a1", r.angles[0]}, {"a2", r.angles[1]},
                                     {"b1", r.angles[2]}, {"b2", r.angles[3]}}},
                         {"correlators", r.correlators},
                         {"s", r.s},
                         {"violated", r.violated}}));
}

void Report::add_samples(const std::string& name, const JointDistribution& jd,
                         const std::vector<std::size_t>& counts) {
  json entries = json::array();
  for (std::size_t f = 0; f < counts.size(); ++f) {
    const auto idx = jd.unflatten(f);
    json labels = json::array();
    for (std::size_t a = 0; a < idx.size(); ++a) labels.push_back(jd.axes()[a][idx[a]]);
    entries.push_back({{"labels", labels}, {"count", counts[f]}});
  }
  lines_.push_back(dump({{"type", "samples"}, {"name", name}, {"entries", entries}}));
}

void Report::add_raw(const std::string& type, const std::string& name,
                     const std::string& fields) {
  json rec = json::parse(fields);
  rec["type"] = type;
  rec["name"] = name;
  lines_.push_back(dump(rec));
}

bool Report::passed() const { return all_passed(checks_); }

std::vector<std::string> Report::failed_checks() const {
  std::vector<std::string> out;
  for (const auto& c : checks_) {
    if (!c.passed) out.push_back(c.name);
  }
  return out;
}

std::string Report::records(const std::string& timestamp) const {
  std::string out = dump({{"type", "meta"}, {"timestamp", timestamp}}) + "\n";
  for (const auto& l : lines_) out += l + "\n";
  double worst = 0.0;
  for (const auto& c : checks_) worst = std::max(worst, c.deviation);
  out += dump({{"type", "summary"},
               {"kind", kind_},
               {"checks", checks_.size()},
               {"failed", failed_checks()},
               {"max_deviation", worst},
               {"passed", passed()}}) +
         "\n";
  return out;
}

std::string Report::csv() const {
  std::string out = "table,axis_labels,probability\n";
  for (const auto& r : csv_rows_) out += r + "\n";
  return out;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace qframes
