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

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "gen.hpp"
#include "qframes/config.hpp"
#include "qframes/report.hpp"
#include "qframes/scenarios.hpp"

using namespace qframes;

TEST_CASE("defaults") {
  const auto c = default_config(ScenarioKind::kBell);
  REQUIRE(c.amplitudes.size() == 2);
  CHECK(c.amplitudes[0] == Complex(1.0 / std::numbers::sqrt2));
  CHECK(c.amplitudes[1] == Complex(-1.0 / std::numbers::sqrt2));
  CHECK(c.theta1 == 0.0);
  CHECK(c.theta2 == std::numbers::pi / 4.0);
  CHECK(c.seed == kDefaultSeed);
  CHECK_FALSE(c.grid.has_value());
  const auto s = default_config(ScenarioKind::kChshScan, AngleUnit::kDeg);
  REQUIRE(s.grid.has_value());
  CHECK(s.grid->stop == 360.0);
  CHECK(s.grid->steps == 25);
  CHECK(s.theta2 == 45.0);
}

TEST_CASE("parse a full config") {
  const auto parsed = parse_config(R"(kind: bell
seed: 7
shots: 50
model: factorized
amplitudes: [[0.6, 0.0], [0.0, -0.8]]
angles:
  unit: deg
  theta1: 30
  theta2: 45
output:
  path: out.jsonl
  format: csv
)");
  const auto& c = parsed.config;
  CHECK(parsed.warnings.empty());
  CHECK(c.kind == ScenarioKind::kBell);
  CHECK(c.kind_explicit);
  CHECK(c.seed == 7);
  CHECK(c.shots == 50);
  CHECK(c.model == "factorized");
  CHECK(c.amplitudes[1] == Complex(0.0, -0.8));
  CHECK(c.unit == AngleUnit::kDeg);
  CHECK(c.unit_explicit);
  CHECK(c.theta1 == 30.0);
  CHECK(c.output_path == "out.jsonl");
  CHECK(c.format == OutputFormat::kCsv);
}

TEST_CASE("degree conversion is exact at multiples of 45") {
  CHECK(to_radians(180.0, AngleUnit::kDeg) == std::numbers::pi);
  CHECK(to_radians(45.0, AngleUnit::kDeg) == std::numbers::pi / 4.0);
  CHECK(to_radians(90.0, AngleUnit::kDeg) == std::numbers::pi / 2.0);
  CHECK(to_radians(360.0, AngleUnit::kDeg) == 2.0 * std::numbers::pi);
  CHECK(to_radians(1.25, AngleUnit::kRad) == 1.25);
}

TEST_CASE("unit mismatch is an error") {
  const std::string text = "angles:\n  unit: deg\n  theta1: 10\n";
  CHECK_NOTHROW(parse_config(text, "x", {ScenarioKind::kBell, AngleUnit::kDeg}));
  CHECK_THROWS_AS(parse_config(text, "x", {ScenarioKind::kBell, AngleUnit::kRad}), ConfigError);
  // Untagged angles take the requested unit.
  const auto p = parse_config("angles:\n  theta1: 10\n", "x", {ScenarioKind::kBell, AngleUnit::kDeg});
  CHECK(p.config.unit == AngleUnit::kDeg);
  CHECK(p.config.theta2 == 45.0);
}

TEST_CASE("kind mismatch is an error") {
  CHECK_THROWS_AS(parse_config("kind: epr\n", "x", {ScenarioKind::kBell, std::nullopt}), ConfigError);
  const auto p = parse_config("seed: 3\n", "x", {ScenarioKind::kEpr, std::nullopt});
  CHECK(p.config.kind == ScenarioKind::kEpr);
  CHECK(p.config.amplitudes[1] == Complex(1.0 / std::numbers::sqrt2));
}

TEST_CASE("diagnostics name the field and line") {
  auto message = [](const std::string& text) {
    try {
      parse_config(text, "cfg.yaml");
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  auto m = message("seed: 1\nangles:\n  theta3: 1\n");
  CHECK(m.find("cfg.yaml:3") != std::string::npos);
  CHECK(m.find("angles.theta3") != std::string::npos);
  m = message("seed: -4\n");
  CHECK(m.find("seed") != std::string::npos);
  m = message("grid:\n  steps: 0\n");
  CHECK(m.find("grid.steps") != std::string::npos);
  m = message("angles:\n  theta1: .inf\n");
  CHECK(m.find("finite") != std::string::npos);
  m = message("amplitudes: [[1, 0], [1, 0]]\n");
  CHECK(m.find("not normalized") != std::string::npos);
  m = message("kind: [\n");
  CHECK(m.find("cfg.yaml:") != std::string::npos);
  m = message("model: classical\n");
  CHECK(m.find("model") != std::string::npos);
}

TEST_CASE("near-normalized amplitudes are renormalized with a warning") {
  const auto p = parse_config("amplitudes: [[0.6, 0], [0.800000001, 0]]\n");
  REQUIRE(p.warnings.size() == 1);
  CHECK(p.warnings[0].find("renormalized") != std::string::npos);
  double n = 0.0;
  for (const auto& z : p.config.amplitudes) n += std::norm(z);
  CHECK(std::abs(n - 1.0) <= 1e-15);
  CHECK(parse_config("amplitudes: [[0.6, 0], [0.80000000000001, 0]]\n").warnings.empty());
}

TEST_CASE("config round trip") {
  gen::for_all(81, 50, [](gen::Gen& g, int i) {
    const ScenarioKind kinds[] = {ScenarioKind::kEpr, ScenarioKind::kBell, ScenarioKind::kExtended,
                                  ScenarioKind::kChshScan};
    ScenarioConfig c = default_config(kinds[i % 4], i % 2 ? AngleUnit::kDeg : AngleUnit::kRad);
    c.kind_explicit = g.uniform() < 0.5;
    c.unit_explicit = true;
    const auto v = g.state(2);
    c.amplitudes = {v[0], v[1]};
    c.delta = g.uniform(-7.0, 7.0);
    c.theta1 = g.uniform(-400.0, 400.0);
    c.theta2 = g.uniform(-1.0, 1.0) * 1e-7;
    if (g.uniform() < 0.5) c.grid = GridSpec{g.uniform(), g.uniform(1.0, 9.0), 1 + g.index(40)};
    c.model = g.uniform() < 0.5 ? "quantum" : "factorized";
    c.shots = g.index(100000);
    c.seed = g.engine()();
    c.output_path = g.uniform() < 0.5 ? "" : "out/file.jsonl";
    c.format = g.uniform() < 0.5 ? OutputFormat::kRecords : OutputFormat::kCsv;

    const ParseOptions opts{c.kind, std::nullopt};
    const auto text = serialize_config(c);
    const auto once = parse_config(text, "rt", opts);
    CHECK(once.warnings.empty());
    CHECK(once.config == c);
    CHECK(serialize_config(once.config) == text);
    CHECK(parse_config(serialize_config(once.config), "rt", opts).config == once.config);
  });
}

TEST_CASE("report records are self-describing") {
  const auto c = default_config(ScenarioKind::kBell);
  Report report(c, {"a warning"});
  const auto r = bell_run({c.amplitudes[0], c.amplitudes[1]}, c.theta1, c.theta2);
  report.add_distribution("joint_quantum", r.joint_quantum, {"b1", "b2"});
  report.add_checks(r.checks);
  report.add_checks({make_check("forced", 1.0, 0.5)});
  const auto text = report.records("T");
  std::istringstream in(text);
  std::string line;
  std::vector<nlohmann::json> recs;
  while (std::getline(in, line)) recs.push_back(nlohmann::json::parse(line));
  REQUIRE(recs.size() >= 4);
  CHECK(recs[0]["type"] == "meta");
  CHECK(recs[0]["timestamp"] == "T");
  CHECK(recs[1]["type"] == "header");
  CHECK(recs[1]["seed"] == kDefaultSeed);
  CHECK(recs[1]["version"] == QFRAMES_VERSION);
  CHECK(recs[1]["warnings"][0] == "a warning");
  CHECK(recs[1].contains("conventions"));
  CHECK(recs[2]["type"] == "distribution");
  CHECK(recs[2]["axes"][0][0] == "up");
  CHECK(recs[2]["basis"][1] == "b2");
  CHECK(recs[2]["entries"].size() == 4);
  CHECK(recs.back()["type"] == "summary");
  CHECK(recs.back()["passed"] == false);
  CHECK(recs.back()["failed"][0] == "forced");
  CHECK_FALSE(report.passed());
  CHECK(report.failed_checks() == std::vector<std::string>{"forced"});

  const auto csv = report.csv();
  CHECK(csv.rfind("table,axis_labels,probability\n", 0) == 0);
  CHECK(csv.find("joint_quantum,up|down,") != std::string::npos);
}
