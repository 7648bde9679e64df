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

// qframes command-line driver.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "qframes/acceptance.hpp"
#include "qframes/config.hpp"
#include "qframes/frames.hpp"
#include "qframes/report.hpp"
#include "qframes/scenarios.hpp"
#include "qframes/tolerances.hpp"

namespace {

using namespace qframes;

constexpr int kExitChecks = 1;
constexpr int kExitUsage = 2;

struct CommonFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format;
  std::string unit;
  unsigned threads = 0;
  double tolerance_scale = 1.0;
};

void add_common(CLI::App* sub, CommonFlags& f) {
  sub->add_option("--config", f.config_path, "YAML scenario file")->check(CLI::ExistingFile);
  sub->add_option("--seed", f.seed, "RNG seed");
  sub->add_option("--out", f.out, "result file");
  sub->add_option("--format", f.format, "records or csv")->check(CLI::IsMember({"records", "csv"}));
  sub->add_option("--angles-unit", f.unit, "rad or deg")->check(CLI::IsMember({"rad", "deg"}));
}

ScenarioConfig resolve(ScenarioKind kind, const CommonFlags& f, std::vector<std::string>& warnings) {
  ParseOptions opts;
  opts.kind = kind;
  if (!f.unit.empty()) opts.unit = parse_angle_unit(f.unit);
  ParsedConfig parsed;
  if (!f.config_path.empty()) {
    parsed = load_config(f.config_path, opts);
  } else {
    parsed.config = default_config(kind, opts.unit.value_or(AngleUnit::kRad));
  }
  ScenarioConfig c = parsed.config;
  c.kind = kind;
  warnings = parsed.warnings;
  if (f.seed) c.seed = *f.seed;
  if (!f.out.empty()) c.output_path = f.out;
  if (!f.format.empty()) c.format = *parse_format(f.format);
  if (c.output_path.empty()) {
    c.output_path = std::string("qframes-") + to_string(kind) +
                    (c.format == OutputFormat::kCsv ? ".csv" : ".jsonl");
  }
  return c;
}

SchmidtCoefficients schmidt(const ScenarioConfig& c) { return {c.amplitudes[0], c.amplitudes[1]}; }

CorrelationModel model_of(const ScenarioConfig& c) {
  return c.model == "factorized" ? CorrelationModel::kFactorized : CorrelationModel::kQuantum;
}

std::string fmt(double v, int precision = 6) {
  std::ostringstream s;
  s << std::setprecision(precision) << v;
  return s.str();
}

std::string axis_basis(const std::string& device, const std::string& probe, double theta) {
  return device + " pointer; outcome j of " + probe + " along rotated_spin_basis(" + fmt(theta, 17) +
         " rad)[j]";
}

void print_table(const JointDistribution& jd, const std::string& title) {
  std::cout << title << "\n";
  const auto p = jd.probabilities();
  for (std::size_t f = 0; f < p.size(); ++f) {
    const auto idx = jd.unflatten(f);
    std::string labels;
    for (std::size_t a = 0; a < idx.size(); ++a) {
      labels += (a ? "," : "") + jd.systems()[a].to_string() + "=" + jd.axes()[a][idx[a]];
    }
    std::cout << "  " << std::left << std::setw(40) << labels << std::right
              << std::setw(12) << std::fixed << std::setprecision(8) << p[f] << "\n";
    std::cout.unsetf(std::ios::fixed);
  }
}

void print_checks(const std::vector<Check>& checks) {
  std::cout << "checks\n";
  for (const auto& c : checks) {
    std::cout << "  " << (c.passed ? "PASS " : "FAIL ") << std::left << std::setw(56) << c.name
              << std::right << " deviation " << std::setw(12) << fmt(c.deviation, 3)
              << "  tolerance " << fmt(c.tolerance, 3) << "\n";
  }
}

std::vector<std::string> names(const CompositeLayout& layout) {
  std::vector<std::string> out;
  for (const auto& s : layout.subsystems()) out.push_back(s.label);
  return out;
}

void run_epr(const ScenarioConfig& c, Report& report) {
  const Complex a = c.amplitudes[0];
  const Complex b = c.amplitudes[1];
  const double delta = to_radians(c.delta, c.unit);
  const auto r = epr_run(a, b, delta);

  report.add_state("initial_state", names(r.layout), r.initial_state.amplitudes());
  report.add_state("whole_state", names(r.layout), r.whole_state.amplitudes());
  const JointDistribution branches({{"M"}}, {{"plus", "minus"}},
                                   {r.branch_probabilities[0], r.branch_probabilities[1]});
  report.add_distribution("branch_probabilities", branches,
                          {axis_basis("M", "P1", delta)});
  const char* tags[] = {"phi_plus", "phi_minus"};
  for (int k = 0; k < 2; ++k) {
    if (r.conditional_states[k]) {
      report.add_state(tags[k], {"P2"}, r.conditional_states[k]->amplitudes());
    }
  }
  report.add_value("separability_deviation", r.separability_deviation);

  // Sample the device readout through M's possible internal states.
  std::mt19937_64 rng(c.seed);
  const auto pointer = PointerMap::standard("M", {"plus", "minus"});
  const auto ensemble =
      possible_internal_states(frame_state(r.whole_state, r.layout, {"M"}, Isolation::kIsolated));
  std::map<std::string, std::size_t> counts{{"plus", 0}, {"minus", 0}};
  for (std::size_t i = 0; i < c.shots; ++i) {
    ++counts[readout(sample_internal_state(ensemble, rng).state, pointer)];
  }
  std::vector<std::size_t> flat{counts["plus"], counts["minus"]};
  report.add_samples("device_readout", branches, flat);
  report.add_checks(r.checks);

  std::cout << "epr  a=" << fmt(a.real()) << (a.imag() ? "+" + fmt(a.imag()) + "i" : "")
            << "  b=" << fmt(b.real()) << (b.imag() ? "+" + fmt(b.imag()) + "i" : "")
            << "  delta=" << fmt(delta) << " rad\n";
  print_table(branches, "branch probabilities");
  for (int k = 0; k < 2; ++k) {
    std::cout << "  " << tags[k] << ": ";
    if (!r.conditional_states[k]) {
      std::cout << "(zero-weight branch)\n";
      continue;
    }
    const auto amps = r.conditional_states[k]->amplitudes();
    std::cout << "(" << fmt(amps[0].real()) << "," << fmt(amps[0].imag()) << ") |up> + ("
              << fmt(amps[1].real()) << "," << fmt(amps[1].imag()) << ") |down>\n";
  }
  std::cout << "readout samples (" << c.shots << " shots): plus " << counts["plus"] << ", minus "
            << counts["minus"];
  if (counts.size() > 2) std::cout << ", other " << c.shots - counts["plus"] - counts["minus"];
  std::cout << "\n";
}

void run_bell(const ScenarioConfig& c, Report& report) {
  const double t1 = to_radians(c.theta1, c.unit);
  const double t2 = to_radians(c.theta2, c.unit);
  const auto r = bell_run(schmidt(c), t1, t2);
  const std::vector<std::string> basis{axis_basis("M1", "P1", t1), axis_basis("M2", "P2", t2)};
  report.add_distribution("joint_quantum", r.joint_quantum, basis);
  report.add_distribution("joint_factorized", r.joint_factorized, basis);
  const JointDistribution m1({{"M1"}}, {r.joint_quantum.axes()[0]}, r.marginal1);
  report.add_distribution("marginal_M1", m1, {basis[0]});
  report.add_value("pipeline_deviation", r.pipeline_deviation);
  report.add_value("marginal_deviation", r.marginal_deviation);
  report.add_value("no_signaling_deviation", r.no_signaling_deviation);
  report.add_value("correlator_quantum", correlator(r.joint_quantum));
  report.add_value("correlator_factorized", correlator(r.joint_factorized));
  std::mt19937_64 rng(c.seed);
  const auto& sampled = model_of(c) == CorrelationModel::kQuantum ? r.joint_quantum : r.joint_factorized;
  report.add_samples(std::string("samples_") + c.model, sampled, sample_counts(sampled, c.shots, rng));
  report.add_checks(r.checks);

  std::cout << "bell  theta1=" << fmt(t1) << "  theta2=" << fmt(t2) << " rad\n";
  print_table(r.joint_quantum, "joint (quantum)");
  print_table(r.joint_factorized, "joint (factorized)");
  std::cout << "E quantum " << fmt(correlator(r.joint_quantum)) << ", E factorized "
            << fmt(correlator(r.joint_factorized)) << "\n";
}

void run_extended(const ScenarioConfig& c, Report& report) {
  const double t1 = to_radians(c.theta1, c.unit);
  const double t2 = to_radians(c.theta2, c.unit);
  const auto r = extended_bell_run(schmidt(c), t1, t2);
  const std::string rec1 = "Mt1 pointer; l-th Schmidt branch of P1+M1";
  const std::string rec2 = "Mt2 pointer; l-th Schmidt branch of P2+M2";
  const auto b1 = axis_basis("M1", "P1", t1);
  const auto b2 = axis_basis("M2", "P2", t2);
  report.add_distribution("four_way", r.four_way, {rec1, rec2, b1, b2});
  report.add_distribution("pair_marginal", r.pair_marginal, {b1, b2});
  report.add_distribution("record_marginal", r.record_marginal, {rec1, rec2});
  report.add_distribution("joint_quantum", r.joint_quantum, {b1, b2});
  report.add_distribution("joint_factorized", r.joint_factorized, {b1, b2});
  report.add_value("disturbance", r.disturbance);
  std::mt19937_64 rng(c.seed);
  report.add_samples("samples_four_way", r.four_way, sample_counts(r.four_way, c.shots, rng));
  report.add_checks(r.checks);

  std::cout << "extended  theta1=" << fmt(t1) << "  theta2=" << fmt(t2) << " rad\n";
  print_table(r.four_way, "four-way (Mt1, Mt2, M1, M2)");
  print_table(r.pair_marginal, "(M1, M2) with recording devices present");
  std::cout << "disturbance vs two-device joint: " << fmt(r.disturbance) << "\n";
}

void run_chsh_scan(const ScenarioConfig& c, Report& report, unsigned threads) {
  if (!c.grid) throw ConfigError("chsh-scan needs a grid");
  const AngleGrid grid{to_radians(c.grid->start, c.unit), to_radians(c.grid->stop, c.unit),
                       c.grid->steps};
  const auto model = model_of(c);
  const auto r = chsh_scan(schmidt(c), grid, model, threads);
  report.add_chsh("coarse_best", r.coarse_best);
  report.add_chsh("refined", r.refined);
  report.add_value("cells", static_cast<double>(r.cells));
  // Tables behind the four refined correlators.
  const auto& ang = r.refined.angles;
  const char* pairs[] = {"a1b1", "a1b2", "a2b1", "a2b2"};
  for (int i = 0; i < 4; ++i) {
    const double ta = ang[i / 2];
    const double tb = ang[2 + i % 2];
    const auto jd = model == CorrelationModel::kQuantum ? bell_joint_quantum_closed(schmidt(c), ta, tb)
                                                        : bell_joint_factorized_closed(schmidt(c), ta, tb);
    report.add_distribution(std::string("refined_") + pairs[i], jd,
                            {axis_basis("M1", "P1", ta), axis_basis("M2", "P2", tb)});
  }
  const double bound = model == CorrelationModel::kQuantum ? 2.0 * std::numbers::sqrt2 : 2.0;
  const double excess = std::max(std::abs(r.coarse_best.s), std::abs(r.refined.s)) - bound;
  report.add_checks({make_check(model == CorrelationModel::kQuantum ? "tsirelson_bound" : "local_bound",
                                std::max(0.0, excess), tol::kChshSlack),
                     make_check("refinement_not_worse",
                                std::max(0.0, std::abs(r.coarse_best.s) - std::abs(r.refined.s)),
                                tol::kChshSlack)});

  std::cout << "chsh-scan  model=" << to_string(model) << "  grid " << grid.steps << "^4 over ["
            << fmt(grid.start) << ", " << fmt(grid.stop) << ") rad\n";
  for (const auto* rep : {&r.coarse_best, &r.refined}) {
    std::cout << (rep == &r.coarse_best ? "  coarse  " : "  refined ") << "S=" << fmt(rep->s, 12)
              << "  a1=" << fmt(rep->angles[0]) << " a2=" << fmt(rep->angles[1])
              << " b1=" << fmt(rep->angles[2]) << " b2=" << fmt(rep->angles[3])
              << (rep->violated ? "  (violates |S|<=2)" : "") << "\n";
  }
}

int write_output(const ScenarioConfig& c, const Report& report) {
  std::ofstream out(c.output_path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << c.output_path << "\n";
    return kExitUsage;
  }
  out << (c.format == OutputFormat::kCsv ? report.csv() : report.records(utc_timestamp()));
  std::cout << "wrote " << c.output_path << "\n";
  return 0;
}

int finish(const Report& report) {
  print_checks(report.checks());
  if (report.passed()) return 0;
  for (const auto& name : report.failed_checks()) std::cerr << "FAILED: " << name << "\n";
  return kExitChecks;
}

int run_verify(const CommonFlags& f) {
  AcceptanceOptions opts;
  if (f.seed) opts.seed = *f.seed;
  opts.tolerance_scale = f.tolerance_scale;
  opts.threads = f.threads;
  const auto results = run_acceptance(opts);
  bool ok = true;
  std::vector<Check> checks;
  for (const auto& r : results) {
    std::cout << (r.passed ? "PASS" : "FAIL") << "  ACCEPTANCE " << r.id << "  " << r.title
              << "  " << r.detail << "\n";
    ok = ok && r.passed;
    checks.push_back({"acceptance_" + std::to_string(r.id), r.passed ? 0.0 : 1.0, 0.0, r.passed});
  }
  if (!f.out.empty()) {
    ScenarioConfig c = default_config(ScenarioKind::kVerify);
    c.seed = opts.seed;
    c.output_path = f.out;
    Report report(c, {});
    report.add_value("tolerance_scale", opts.tolerance_scale);
    report.add_checks(checks);
    if (write_output(c, report) != 0) return kExitUsage;
  }
  for (const auto& r : results) {
    if (!r.passed) std::cerr << "FAILED: ACCEPTANCE " << r.id << " (" << r.title << ")\n";
  }
  return ok ? 0 : kExitChecks;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qframes: relative-state frames, correlations and Bell scenarios"};
  app.set_version_flag("--version", std::string("qframes ") + QFRAMES_VERSION);
  app.require_subcommand(1);

  CommonFlags f;
  struct Sub {
    ScenarioKind kind;
    CLI::App* app;
  };
  std::vector<Sub> subs;
  for (auto [kind, help] : {std::pair{ScenarioKind::kEpr, "S_z' measurement on one particle of a pair"},
                            std::pair{ScenarioKind::kBell, "joint distribution of two spin measurements"},
                            std::pair{ScenarioKind::kExtended, "Bell setup with two recording devices"},
                            std::pair{ScenarioKind::kChshScan, "grid search for the largest |S|"}}) {
    auto* sub = app.add_subcommand(to_string(kind), help);
    add_common(sub, f);
    if (kind == ScenarioKind::kChshScan) sub->add_option("--threads", f.threads, "worker threads (0 = all)");
    subs.push_back({kind, sub});
  }
  auto* verify = app.add_subcommand("verify", "run the acceptance suite");
  verify->add_option("--seed", f.seed, "RNG seed");
  verify->add_option("--out", f.out, "result file");
  verify->add_option("--tolerance-scale", f.tolerance_scale, "multiply every tolerance");
  verify->add_option("--threads", f.threads, "worker threads (0 = all)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (verify->parsed()) return run_verify(f);
    for (const auto& s : subs) {
      if (!s.app->parsed()) continue;
      std::vector<std::string> warnings;
      ScenarioConfig c;
      try {
        c = resolve(s.kind, f, warnings);
      } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
      }
      for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
      Report report(c, warnings);
      switch (s.kind) {
        case ScenarioKind::kEpr: run_epr(c, report); break;
        case ScenarioKind::kBell: run_bell(c, report); break;
        case ScenarioKind::kExtended: run_extended(c, report); break;
        case ScenarioKind::kChshScan: run_chsh_scan(c, report, f.threads); break;
        case ScenarioKind::kVerify: break;
      }
      if (const int rc = write_output(c, report); rc != 0) return rc;
      return finish(report);
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NormalizationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitChecks;
  }
  return 0;
}
