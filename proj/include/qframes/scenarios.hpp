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

#ifndef QFRAMES_SCENARIOS_HPP
#define QFRAMES_SCENARIOS_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qframes/correlations.hpp"
#include "qframes/dynamics.hpp"
#include "qframes/frames.hpp"
#include "qframes/tensor.hpp"

namespace qframes {

/// Two-outcome Schmidt coefficients c_1, c_2 of the two-particle state
/// sum_l c_l |phi_{P1,l}>|phi_{P2,l}> with phi_{P1} = (up, down) and
/// phi_{P2} = (down, up).
using SchmidtCoefficients = std::array<Complex, 2>;

/// One named verification inside a scenario run.
struct Check {
  std::string name;
  double deviation;
  double tolerance;
  bool passed;
};

Check make_check(std::string name, double deviation, double tolerance);
bool all_passed(const std::vector<Check>& checks);

/// Throws NormalizationError unless |a|^2 + |b|^2 = 1 within tol::kStateNorm.
void require_normalized(std::span<const Complex> amplitudes);

// ---------------------------------------------------------------------------
// Two-particle disturbance demo.

struct ComparabilityResult {
  Complex a;
  Complex b;
  CompositeLayout layout;  // P1, P2, M
  StateVector pre_state;   // a|up,down> - b|down,up> on P1+P2
  StateVector whole_state;
  /// Possible internal states of P1+P2 relative to P1+P2+M after measuring S_z on P1.
  InternalStateEnsemble post_states;
  /// Largest overlap of the pre-measurement state with any post-measurement possible state.
  double max_pre_overlap;
  bool pre_state_still_possible;
  /// rho_{P2}(P1+P2) before the measurement, standard (up, down) basis.
  ComplexMatrix rho_p2;
  std::vector<Check> checks;
};

ComparabilityResult comparability_demo(Complex a, Complex b);

// ---------------------------------------------------------------------------
// EPR: S_z' measurement on P1 of a|up,down> - b|down,up>.

/// Closed-form conditional state of P2 for outcome index (0 = "+", 1 = "-"),
/// and the unnormalized branch weight. State absent when the weight vanishes.
struct EprBranch {
  double probability;
  std::optional<StateVector> conditional;
};
std::array<EprBranch, 2> epr_branches_closed(Complex a, Complex b, double delta);
/// Whole final state on (P1, P2, M) written directly from the branch expansion.
StateVector epr_whole_state_closed(Complex a, Complex b, double delta);

struct EprResult {
  Complex a;
  Complex b;
  double delta;
  CompositeLayout layout;  // P1, P2, M
  StateVector initial_state;
  StateVector whole_state;
  std::array<double, 2> branch_probabilities;
  /// Eigenvalues of rho_{P1+P2}(P1+P2+M), matched to branches.
  std::array<double, 2> pipeline_branch_probabilities;
  /// Pipeline eigenstates of rho_{P1+P2}(P1+P2+M), matched to branches.
  std::array<std::optional<StateVector>, 2> branch_states;
  /// Closed-form phi_+ and phi_-.
  std::array<std::optional<StateVector>, 2> conditional_states;
  /// Conditional states recovered through the pipeline.
  std::array<std::optional<StateVector>, 2> pipeline_conditional_states;
  /// The two branches have equal weight; the intra-block basis was fixed by
  /// the measured quantity on P1.
  bool branches_degenerate;
  bool separability_ok;
  double separability_deviation;
  /// |a| = |b|: P2's frame state is maximally mixed and eigenprojectors were compared.
  bool separability_degenerate;
  std::vector<Check> checks;
};

EprResult epr_run(Complex a, Complex b, double delta);

// ---------------------------------------------------------------------------
// Bell analysis.

/// Outcome j of particle i along the measurement axis: rotated_spin_basis(theta)[j].
/// Closed forms over the fixed Schmidt bases.
std::vector<double> bell_marginal_closed(const SchmidtCoefficients& c, double theta1);
JointDistribution bell_joint_quantum_closed(const SchmidtCoefficients& c, double theta1,
                                            double theta2);
JointDistribution bell_joint_factorized_closed(const SchmidtCoefficients& c, double theta1,
                                               double theta2);
/// Four-axis table over (M~1, M~2, M1, M2).
JointDistribution extended_joint_closed(const SchmidtCoefficients& c, double theta1,
                                        double theta2);

/// Whole-system state and layout (P1, M1, P2, M2) after both measurements.
struct BellPipeline {
  CompositeLayout layout;
  StateVector initial_state;
  StateVector final_state;
  MeasurementModel model1;
  MeasurementModel model2;
};
BellPipeline bell_pipeline(const SchmidtCoefficients& c, double theta1, double theta2);

struct BellResult {
  SchmidtCoefficients c;
  double theta1;
  double theta2;
  std::vector<double> marginal1;
  JointDistribution joint_quantum;
  JointDistribution joint_factorized;
  double pipeline_deviation;
  double marginal_deviation;
  double no_signaling_deviation;
  std::vector<Check> checks;
};

BellResult bell_run(const SchmidtCoefficients& c, double theta1, double theta2);

struct ExtendedBellResult {
  SchmidtCoefficients c;
  double theta1;
  double theta2;
  CompositeLayout layout;  // P1, M1, P2, M2, M~1, M~2
  StateVector whole_state;
  /// Joint table over (M~1, M~2, M1, M2) from the four-device state.
  JointDistribution four_way;
  JointDistribution four_way_closed;
  /// (M1, M2) marginal of four_way.
  JointDistribution pair_marginal;
  /// (M~1, M~2) marginal of four_way.
  JointDistribution record_marginal;
  JointDistribution joint_quantum;
  JointDistribution joint_factorized;
  double state_deviation;
  double four_way_deviation;
  double factorized_deviation;
  double record_deviation;
  /// max |pair_marginal - joint_quantum|: how much the extra devices changed the correlations.
  double disturbance;
  std::vector<Check> checks;
};

ExtendedBellResult extended_bell_run(const SchmidtCoefficients& c, double theta1, double theta2);

// ---------------------------------------------------------------------------
// CHSH.

enum class CorrelationModel { kQuantum, kFactorized };
const char* to_string(CorrelationModel model);

/// E = sum_{j,k} s_j s_k P(j,k), with s = (+1, -1).
double correlator(const JointDistribution& jd);
double correlator(const SchmidtCoefficients& c, double theta1, double theta2,
                  CorrelationModel model);

struct ChshReport {
  std::array<double, 4> angles;       // a1, a2, b1, b2
  std::array<double, 4> correlators;  // E(a1,b1), E(a1,b2), E(a2,b1), E(a2,b2)
  double s;
  bool violated;
  CorrelationModel model;
};

ChshReport chsh(const SchmidtCoefficients& c, double a1, double a2, double b1, double b2,
                CorrelationModel model);

/// `steps` points start + i (stop - start) / steps, i = 0..steps-1.
struct AngleGrid {
  double start;
  double stop;
  std::size_t steps;
  std::vector<double> points() const;
};

struct ChshScanResult {
  ChshReport coarse_best;
  ChshReport refined;
  std::size_t cells;
};

/// Maximizes |S| over grid^4, then refines locally by compass search.
/// threads = 0 uses the hardware concurrency.
ChshScanResult chsh_scan(const SchmidtCoefficients& c, const AngleGrid& grid,
                         CorrelationModel model, unsigned threads = 0);

/// Histogram of `shots` draws from a joint table (flat row-major order).
std::vector<std::size_t> sample_counts(const JointDistribution& jd, std::size_t shots,
                                       std::mt19937_64& rng);

}  // namespace qframes

#endif  // QFRAMES_SCENARIOS_HPP
