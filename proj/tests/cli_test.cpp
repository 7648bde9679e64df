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

// Runs the qframes executable end to end.

#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

struct Cleanup {
  fs::path dir;
  ~Cleanup() {
    std::error_code ec;
    if (!dir.empty()) fs::remove_all(dir, ec);
  }
};

fs::path scratch() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("qframes_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  static Cleanup cleanup{dir};
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

Run run(const std::string& args) {
  const auto out = scratch() / "stdout.txt";
  const auto err = scratch() / "stderr.txt";
  const std::string cmd = std::string(QFRAMES_CLI) + " " + args + " > " + out.string() + " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

fs::path write(const std::string& name, const std::string& text) {
  const auto p = scratch() / name;
  std::ofstream(p) << text;
  return p;
}

std::vector<nlohmann::json> records(const fs::path& p) {
  std::vector<nlohmann::json> out;
  std::istringstream in(slurp(p));
  std::string line;
  while (std::getline(in, line)) out.push_back(nlohmann::json::parse(line));
  return out;
}

const nlohmann::json* find(const std::vector<nlohmann::json>& recs, const std::string& type,
                           const std::string& name) {
  for (const auto& r : recs) {
    if (r["type"] == type && r.value("name", "") == name) return &r;
  }
  return nullptr;
}

std::string without_first_line(const std::string& s) { return s.substr(s.find('\n') + 1); }

// Drops the "wrote <path>" line, which names the output file.
std::string summary(const std::string& out) {
  std::istringstream in(out);
  std::string line;
  std::string kept;
  while (std::getline(in, line)) {
    if (line.rfind("wrote ", 0) != 0) kept += line + "\n";
  }
  return kept;
}

}  // namespace

TEST_CASE("bell run writes both tables and passes") {
  const auto out = scratch() / "bell.jsonl";
  const auto r = run("bell --out " + out.string());
  REQUIRE(r.code == 0);
  CHECK(r.out.find("joint (quantum)") != std::string::npos);
  const auto recs = records(out);
  CHECK(recs.front()["type"] == "meta");
  REQUIRE(find(recs, "distribution", "joint_quantum"));
  REQUIRE(find(recs, "distribution", "joint_factorized"));
  const auto* ns = find(recs, "value", "no_signaling_deviation");
  REQUIRE(ns);
  CHECK((*ns)["value"].get<double>() < 1e-10);
  const auto* header = find(recs, "header", "");
  REQUIRE(header);
  CHECK((*header)["seed"] == 20260101);
  CHECK((*header)["inputs"]["angles"]["theta2_rad"].get<double>() == doctest::Approx(M_PI / 4));
  CHECK(recs.back()["type"] == "summary");
  CHECK(recs.back()["passed"] == true);
}

TEST_CASE("seeded runs repeat exactly apart from the timestamp") {
  for (const std::string kind : {"bell", "epr", "extended", "chsh-scan"}) {
    const auto a = scratch() / (kind + "_a.jsonl");
    const auto b = scratch() / (kind + "_b.jsonl");
    REQUIRE(run(kind + " --seed 99 --out " + a.string()).code == 0);
    REQUIRE(run(kind + " --seed 99 --out " + b.string()).code == 0);
    const auto ta = slurp(a);
    const auto tb = slurp(b);
    CHECK(ta.substr(0, ta.find('\n')).find("timestamp") != std::string::npos);
    CHECK(without_first_line(ta) == without_first_line(tb));
  }
  const auto c = scratch() / "bell_c.jsonl";
  REQUIRE(run("bell --seed 100 --out " + c.string()).code == 0);
  CHECK(without_first_line(slurp(c)) != without_first_line(slurp(scratch() / "bell_a.jsonl")));
}

TEST_CASE("epr with a product input") {
  const auto cfg = write("epr.yaml", "kind: epr\namplitudes: [[1, 0], [0, 0]]\nangles:\n  unit: rad\n  delta: 0.7\n");
  const auto out = scratch() / "epr.jsonl";
  REQUIRE(run("epr --config " + cfg.string() + " --out " + out.string()).code == 0);
  const auto recs = records(out);
  const auto* dist = find(recs, "distribution", "branch_probabilities");
  REQUIRE(dist);
  CHECK((*dist)["entries"][0]["p"].get<double>() == doctest::Approx(std::pow(std::cos(0.35), 2)).epsilon(1e-12));
  const auto* phi = find(recs, "state", "phi_plus");
  REQUIRE(phi);
  // |2,down> = (0, 1) in (up, down) order.
  CHECK(std::abs((*phi)["amplitudes"][0][0].get<double>()) <= 1e-12);
  CHECK(std::abs(std::abs((*phi)["amplitudes"][1][0].get<double>()) - 1.0) <= 1e-12);
}

TEST_CASE("chsh scan finds a violation on the coarse grid") {
  const auto out = scratch() / "scan.jsonl";
  REQUIRE(run("chsh-scan --out " + out.string()).code == 0);
  const auto recs = records(out);
  const auto* coarse = find(recs, "chsh", "coarse_best");
  REQUIRE(coarse);
  CHECK(std::abs((*coarse)["s"].get<double>()) > 2.8);
}

TEST_CASE("degrees and radians give the same result") {
  const auto deg = write("deg.yaml", "angles:\n  unit: deg\n  theta1: 30\n  theta2: 135\n");
  const auto rad = write("rad.yaml", "angles:\n  unit: rad\n  theta1: 0.52359877559829887\n  theta2: 2.3561944901923448\n");
  const auto a = scratch() / "deg.csv";
  const auto b = scratch() / "rad.csv";
  REQUIRE(run("bell --format csv --config " + deg.string() + " --out " + a.string()).code == 0);
  REQUIRE(run("bell --format csv --config " + rad.string() + " --out " + b.string()).code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(a).rfind("table,axis_labels,probability\n", 0) == 0);
}

TEST_CASE("parse errors exit with status 2") {
  const auto bad = write("bad.yaml", "seed: 1\nangles:\n  theta9: 3\n");
  auto r = run("bell --config " + bad.string());
  CHECK(r.code == 2);
  CHECK(r.err.find("angles.theta9") != std::string::npos);
  CHECK(r.err.find(":3") != std::string::npos);

  const auto tagged = write("tagged.yaml", "angles:\n  unit: rad\n");
  r = run("bell --angles-unit deg --config " + tagged.string());
  CHECK(r.code == 2);
  CHECK(r.err.find("angles.unit") != std::string::npos);

  CHECK(run("bell --no-such-flag").code == 2);
  CHECK(run("bell --format xml").code == 2);
  const auto unnorm = write("unnorm.yaml", "amplitudes: [[1, 0], [0.5, 0]]\n");
  CHECK(run("bell --config " + unnorm.string()).code == 2);
  const auto other = write("other.yaml", "kind: epr\n");
  CHECK(run("bell --config " + other.string()).code == 2);
}

TEST_CASE("near-normalized amplitudes warn") {
  const auto cfg = write("warn.yaml", "amplitudes: [[0.707106782, 0], [-0.707106782, 0]]\n");
  const auto out = scratch() / "warn.jsonl";
  const auto r = run("bell --config " + cfg.string() + " --out " + out.string());
  CHECK(r.code == 0);
  CHECK(r.err.find("renormalized") != std::string::npos);
  const auto recs = records(out);
  const auto* header = find(recs, "header", "");
  REQUIRE(header);
  CHECK((*header)["warnings"].size() == 1);
}

TEST_CASE("verify with a tampered tolerance fails by name") {
  const auto r = run("verify --tolerance-scale 0");
  CHECK(r.code == 1);
  CHECK(r.err.find("FAILED: ACCEPTANCE 1") != std::string::npos);
}

TEST_CASE("verify output repeats exactly") {
  const auto a = scratch() / "verify_a.jsonl";
  const auto b = scratch() / "verify_b.jsonl";
  const auto ra = run("verify --out " + a.string());
  const auto rb = run("verify --out " + b.string());
  CHECK(ra.code == rb.code);
  CHECK(summary(ra.out) == summary(rb.out));
  CHECK(without_first_line(slurp(a)) == without_first_line(slurp(b)));
  CHECK(ra.out.find("ACCEPTANCE 11") != std::string::npos);
}
