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

#include "qframes/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qframes/errors.hpp"
#include "qframes/tolerances.hpp"

namespace qframes {

Check make_check(std::string name, double deviation, double tolerance) {
  return {std::move(name), deviation, tolerance, deviation <= tolerance};
}

bool all_passed(const std::vector<Check>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

void require_normalized(std::span<const Complex> amplitudes) {
  double total = 0.0;
  for (const auto& z : amplitudes) total += std::norm(z);
  if (std::abs(total - 1.0) > tol::kStateNorm) {
    throw NormalizationError("amplitudes are not normalized (sum of |c|^2 = " +
                             std::to_string(total) + ")");
  }
}

namespace {

constexpr const char* kUp = "up";
constexpr const char* kDown = "down";

const StateVector& up() {
  static const StateVector v = StateVector::basis(2, 0);
  return v;
}
const StateVector& down() {
  static const StateVector v = StateVector::basis(2, 1);
  return v;
}

std::vector<Complex> add(std::vector<Complex> a, std::span<const Complex> b, Complex scale) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += scale * b[i];
  return a;
}

// a|1,up>|2,down> - b|1,down>|2,up>
StateVector two_particle_state(Complex a, Complex b) {
  require_normalized(std::array{a, b});
  std::vector<Complex> v(4);
  v[1] = a;
  v[2] = -b;
  return StateVector(std::move(v));
}

PointerMap spin_pointer(const std::string& device) {
  return PointerMap::standard(device, {kUp, kDown});
}

// Weight of v on (|xi><xi| ⊗ I) for v on (P1, P2) with P1 first.
double weight_on_first(std::span<const Complex> v, const StateVector& xi) {
  double w = 0.0;
  for (std::size_t k = 0; k < 2; ++k) {
    Complex amp = 0.0;
    for (std::size_t i = 0; i < 2; ++i) amp += std::conj(xi[i]) * v[i * 2 + k];
    w += std::norm(amp);
  }
  return w;
}

// Rotates the states of a degenerate block so that they diagonalize the
// observable restricted to the block.
std::vector<StateVector> resolve_block(const std::vector<StateVector>& states,
                                       const ComplexMatrix& observable) {
  const std::size_t n = states.size();
  ComplexMatrix g(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    const auto ob = observable * states[a].amplitudes();
    for (std::size_t b = 0; b < n; ++b) g(b, a) = inner(states[b].amplitudes(), ob);
  }
  const auto eig = eig_hermitian(0.5 * (g + g.adjoint()));
  std::vector<StateVector> out;
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<Complex> v(states[0].dim());
    for (std::size_t a = 0; a < n; ++a) v = add(std::move(v), states[a].amplitudes(), eig.vectors(a, k));
    out.push_back(StateVector::normalized(std::move(v)));
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

ComparabilityResult comparability_demo(Complex a, Complex b) {
  const StateVector pre = two_particle_state(a, b);
  CompositeLayout layout({{"P1", 2}, {"P2", 2}, {"M", 3}});
  const MeasurementModel sz{{"P1"}, "M", {up(), down()}, spin_pointer("M")};

  const StateVector initial = tensor_product(pre, sz.pointer.ready());
  const StateVector whole = apply_measurement(sz, layout, initial);
  auto post = possible_internal_states(frame_state(whole, layout, {"P1", "P2"}, Isolation::kIsolated));

  double max_overlap = 0.0;
  for (const auto& m : post.members()) max_overlap = std::max(max_overlap, overlap(pre, m.state));

  CompositeLayout pair({{"P1", 2}, {"P2", 2}});
  auto rho_p2 = frame_state(pre, pair, {"P2"}).matrix();

  // Expected branches: |up,down> with |a|^2 and |down,up> with |b|^2.
  const StateVector up_down = tensor_product(up(), down());
  const StateVector down_up = tensor_product(down(), up());
  double branch_dev = 0.0;
  double p_up_down = 0.0;
  double p_down_up = 0.0;
  for (const auto& m : post.members()) {
    const double o1 = overlap(m.state, up_down);
    const double o2 = overlap(m.state, down_up);
    branch_dev = std::max(branch_dev, 1.0 - std::max(o1, o2));
    (o1 > o2 ? p_up_down : p_down_up) += m.probability;
  }
  const double prob_dev =
      std::max(std::abs(p_up_down - std::norm(a)), std::abs(p_down_up - std::norm(b)));

  std::vector<Check> checks{
      make_check("post-measurement states are product branches", branch_dev, tol::kDualPath),
      make_check("branch probabilities (|a|^2, |b|^2)", prob_dev, tol::kDualPath),
      make_check("P1 and P1+P2 are comparable",
                 comparable(layout, {"P1"}, {"P1", "P2"}) ? 0.0 : 1.0, 0.0),
  };

  return {a,
          b,
          std::move(layout),
          pre,
          whole,
          std::move(post),
          max_overlap,
          max_overlap > 1.0 - tol::kReadout,
          std::move(rho_p2),
          std::move(checks)};
}

// ---------------------------------------------------------------------------

std::array<EprBranch, 2> epr_branches_closed(Complex a, Complex b, double delta) {
  const double c = std::cos(delta / 2.0);
  const double s = std::sin(delta / 2.0);
  // Components in the (up, down) basis of P2.
  const std::array<std::vector<Complex>, 2> raw{
      std::vector<Complex>{b * s, a * c},
      std::vector<Complex>{-b * c, a * s},
  };
  const std::array<double, 2> weight{std::norm(a) * c * c + std::norm(b) * s * s,
                                     std::norm(a) * s * s + std::norm(b) * c * c};
  std::array<EprBranch, 2> out;
  for (std::size_t i = 0; i < 2; ++i) {
    out[i].probability = weight[i];
    if (weight[i] >= tol::kZeroProbability) {
      auto v = raw[i];
      for (auto& z : v) z /= std::sqrt(weight[i]);
      out[i].conditional = StateVector::normalized(std::move(v));
    }
  }
  return out;
}

StateVector epr_whole_state_closed(Complex a, Complex b, double delta) {
  const double c = std::cos(delta / 2.0);
  const double s = std::sin(delta / 2.0);
  const auto xi = rotated_spin_basis(delta);
  const std::array<std::vector<Complex>, 2> p2{
      std::vector<Complex>{b * s, a * c},
      std::vector<Complex>{-b * c, a * s},
  };
  std::vector<Complex> whole(12);
  for (std::size_t branch = 0; branch < 2; ++branch) {
    const auto pointer = StateVector::basis(3, branch + 1);
    const auto term = tensor_product(tensor_product(xi[branch].amplitudes(), p2[branch]),
                                     pointer.amplitudes());
    whole = add(std::move(whole), term, 1.0);
  }
  return StateVector(std::move(whole));
}

EprResult epr_run(Complex a, Complex b, double delta) {
  const StateVector pair_state = two_particle_state(a, b);
  CompositeLayout layout({{"P1", 2}, {"P2", 2}, {"M", 3}});
  const auto xi = rotated_spin_basis(delta);
  const MeasurementModel model{{"P1"}, "M", {xi[0], xi[1]}, PointerMap::standard("M", {"plus", "minus"})};

  const StateVector initial = tensor_product(pair_state, model.pointer.ready());
  const StateVector whole = apply_measurement(model, layout, initial);
  const StateVector whole_closed = epr_whole_state_closed(a, b, delta);
  const auto closed = epr_branches_closed(a, b, delta);

  std::vector<Check> checks;
  checks.push_back(make_check("final state matches branch expansion",
                              max_abs_diff(whole.amplitudes(), whole_closed.amplitudes()),
                              tol::kDualPath));

  // Pipeline: possible internal states of P1+P2 relative to P1+P2+M.
  const CompositeLayout pair_layout({{"P1", 2}, {"P2", 2}});
  auto ensemble =
      possible_internal_states(frame_state(whole, layout, {"P1", "P2"}, Isolation::kIsolated));

  std::vector<StateVector> states;
  std::vector<double> probs;
  for (const auto& m : ensemble.members()) {
    states.push_back(m.state);
    probs.push_back(m.probability);
  }
  const bool degenerate = ensemble.has_degeneracy();
  if (degenerate) {
    const ComplexMatrix observable =
        tensor_product(xi[0].projector(), ComplexMatrix::identity(2));
    for (const auto& block : ensemble.degenerate_blocks()) {
      std::vector<StateVector> sub;
      for (std::size_t k : block) sub.push_back(states[k]);
      auto rotated = resolve_block(sub, observable);
      for (std::size_t i = 0; i < block.size(); ++i) states[block[i]] = rotated[i];
    }
  }

  std::array<std::optional<StateVector>, 2> branch_states;
  std::array<double, 2> pipeline_probs{0.0, 0.0};
  double identification_dev = 0.0;
  for (std::size_t k = 0; k < states.size(); ++k) {
    const double w_plus = weight_on_first(states[k].amplitudes(), xi[0]);
    const std::size_t branch = w_plus >= 0.5 ? 0 : 1;
    identification_dev = std::max(identification_dev, std::min(w_plus, 1.0 - w_plus));
    if (branch_states[branch]) {
      identification_dev = 1.0;  // two eigenstates claimed the same branch
      continue;
    }
    branch_states[branch] = states[k];
    pipeline_probs[branch] = probs[k];
  }
  checks.push_back(
      make_check("eigenstates are product branches of the measured basis", identification_dev,
                 tol::kDualPath));

  std::array<std::optional<StateVector>, 2> pipeline_conditional;
  double state_dev = 0.0;
  double prob_dev = 0.0;
  for (std::size_t i = 0; i < 2; ++i) {
    prob_dev = std::max(prob_dev, std::abs(pipeline_probs[i] - closed[i].probability));
    if (branch_states[i]) {
      auto p2 = possible_internal_states(frame_state(*branch_states[i], pair_layout, {"P2"}));
      pipeline_conditional[i] = p2[0].state;
    }
    if (pipeline_conditional[i].has_value() != closed[i].conditional.has_value()) {
      state_dev = 1.0;
    } else if (closed[i].conditional) {
      state_dev =
          std::max(state_dev, 1.0 - overlap(*pipeline_conditional[i], *closed[i].conditional));
    }
  }
  checks.push_back(make_check("conditional states: closed form vs pipeline", state_dev, tol::kDualPath));
  checks.push_back(make_check("branch probabilities: closed form vs pipeline", prob_dev, tol::kDualPath));

  // Separability: P2's state relative to P1+P2+M before and after.
  const auto before = frame_state(initial, layout, {"P2"}, Isolation::kIsolated);
  const auto after = frame_state(whole, layout, {"P2"}, Isolation::kIsolated);
  double sep = max_abs_diff(before.matrix(), after.matrix());
  const auto eb = eig_hermitian(before.matrix());
  const auto ea = eig_hermitian(after.matrix());
  const bool sep_degenerate = !eb.degenerate_blocks.empty() || !ea.degenerate_blocks.empty();
  for (std::size_t k = 0; k < 2; ++k) sep = std::max(sep, std::abs(eb.values[k] - ea.values[k]));
  if (sep_degenerate) {
    // Eigenvectors are not unique; compare the eigenprojectors instead.
    ComplexMatrix pb(2, 2);
    ComplexMatrix pa(2, 2);
    for (std::size_t k = 0; k < 2; ++k) {
      const auto vb = eb.vector(k);
      const auto va = ea.vector(k);
      pb += ComplexMatrix::outer(vb, vb);
      pa += ComplexMatrix::outer(va, va);
    }
    sep = std::max(sep, max_abs_diff(pb, pa));
  } else {
    for (std::size_t k = 0; k < 2; ++k) {
      sep = std::max(sep, 1.0 - std::abs(inner(eb.vector(k), ea.vector(k))));
    }
  }
  checks.push_back(make_check("P2 possible internal states unchanged by measuring P1", sep, tol::kDualPath));

  return {a,
          b,
          delta,
          std::move(layout),
          initial,
          whole,
          {closed[0].probability, closed[1].probability},
          pipeline_probs,
          std::move(branch_states),
          {closed[0].conditional, closed[1].conditional},
          std::move(pipeline_conditional),
          degenerate,
          sep <= tol::kDualPath,
          sep,
          sep_degenerate,
          std::move(checks)};
}

// ---------------------------------------------------------------------------

namespace {

// <xi(P_i, j) | phi_{P_i, l}> for the fixed Schmidt bases.
struct Overlaps {
  std::array<std::array<Complex, 2>, 2> first;   // [j][l]
  std::array<std::array<Complex, 2>, 2> second;  // [k][l]
};

Overlaps schmidt_overlaps(double theta1, double theta2) {
  const auto xi1 = rotated_spin_basis(theta1);
  const auto xi2 = rotated_spin_basis(theta2);
  const std::array<const StateVector*, 2> phi1{&up(), &down()};
  const std::array<const StateVector*, 2> phi2{&down(), &up()};
  Overlaps o;
  for (std::size_t j = 0; j < 2; ++j) {
    for (std::size_t l = 0; l < 2; ++l) {
      o.first[j][l] = inner(xi1[j], *phi1[l]);
      o.second[j][l] = inner(xi2[j], *phi2[l]);
    }
  }
  return o;
}

std::vector<std::string> spin_axis() { return {kUp, kDown}; }
std::vector<std::string> record_axis() { return {"l1", "l2"}; }

}  // namespace

std::vector<double> bell_marginal_closed(const SchmidtCoefficients& c, double theta1) {
  require_normalized(c);
  const auto o = schmidt_overlaps(theta1, 0.0);
  std::vector<double> out(2, 0.0);
  for (std::size_t j = 0; j < 2; ++j) {
    for (std::size_t l = 0; l < 2; ++l) out[j] += std::norm(c[l]) * std::norm(o.first[j][l]);
  }
  return out;
}

JointDistribution bell_joint_quantum_closed(const SchmidtCoefficients& c, double theta1,
                                            double theta2) {
  require_normalized(c);
  const auto o = schmidt_overlaps(theta1, theta2);
  std::vector<double> table(4);
  for (std::size_t j = 0; j < 2; ++j) {
    for (std::size_t k = 0; k < 2; ++k) {
      Complex amp = 0.0;
      for (std::size_t l = 0; l < 2; ++l) amp += c[l] * o.first[j][l] * o.second[k][l];
      table[j * 2 + k] = std::norm(amp);
    }
  }
  return JointDistribution({{"M1"}, {"M2"}}, {spin_axis(), spin_axis()}, std::move(table), false,
                           0, Isolation::kIsolated);
}

JointDistribution bell_joint_factorized_closed(const SchmidtCoefficients& c, double theta1,
                                               double theta2) {
  require_normalized(c);
  const auto o = schmidt_overlaps(theta1, theta2);
  std::vector<double> table(4, 0.0);
  for (std::size_t j = 0; j < 2; ++j) {
    for (std::size_t k = 0; k < 2; ++k) {
      for (std::size_t l = 0; l < 2; ++l) {
        table[j * 2 + k] +=
            std::norm(c[l]) * std::norm(o.first[j][l]) * std::norm(o.second[k][l]);
      }
    }
  }
  return JointDistribution({{"M1"}, {"M2"}}, {spin_axis(), spin_axis()}, std::move(table), false,
                           0, Isolation::kIsolated);
}

JointDistribution extended_joint_closed(const SchmidtCoefficients& c, double theta1,
                                        double theta2) {
  require_normalized(c);
  const auto o = schmidt_overlaps(theta1, theta2);
  std::vector<double> table(16, 0.0);
  for (std::size_t l1 = 0; l1 < 2; ++l1) {
    for (std::size_t l2 = 0; l2 < 2; ++l2) {
      if (l1 != l2) continue;
      for (std::size_t j = 0; j < 2; ++j) {
        for (std::size_t k = 0; k < 2; ++k) {
          table[((l1 * 2 + l2) * 2 + j) * 2 + k] =
              std::norm(c[l1]) * std::norm(o.first[j][l1]) * std::norm(o.second[k][l2]);
        }
      }
    }
  }
  return JointDistribution({{"Mt1"}, {"Mt2"}, {"M1"}, {"M2"}},
                           {record_axis(), record_axis(), spin_axis(), spin_axis()},
                           std::move(table), false, 0, Isolation::kIsolated);
}

BellPipeline bell_pipeline(const SchmidtCoefficients& c, double theta1, double theta2) {
  require_normalized(c);
  CompositeLayout layout({{"P1", 2}, {"M1", 3}, {"P2", 2}, {"M2", 3}});
  const auto xi1 = rotated_spin_basis(theta1);
  const auto xi2 = rotated_spin_basis(theta2);
  MeasurementModel m1{{"P1"}, "M1", {xi1[0], xi1[1]}, spin_pointer("M1")};
  MeasurementModel m2{{"P2"}, "M2", {xi2[0], xi2[1]}, spin_pointer("M2")};

  const std::array<const StateVector*, 2> phi1{&up(), &down()};
  const std::array<const StateVector*, 2> phi2{&down(), &up()};
  std::vector<Complex> initial(layout.total_dim());
  for (std::size_t l = 0; l < 2; ++l) {
    const auto left = tensor_product(phi1[l]->amplitudes(), m1.pointer.ready().amplitudes());
    const auto right = tensor_product(phi2[l]->amplitudes(), m2.pointer.ready().amplitudes());
    initial = add(std::move(initial), tensor_product(left, right), c[l]);
  }
  StateVector psi0(std::move(initial));

  // Non-interacting closed systems P1+M1 and P2+M2: product of their propagators.
  const CompositeLayout closed1({{"P1", 2}, {"M1", 3}});
  const CompositeLayout closed2({{"P2", 2}, {"M2", 3}});
  const ComplexMatrix u =
      tensor_product(measurement_unitary(m1, closed1), measurement_unitary(m2, closed2));
  StateVector psi_t = evolve_closed(psi0, u);
  return {std::move(layout), std::move(psi0), std::move(psi_t), std::move(m1), std::move(m2)};
}

namespace {

JointDistribution pipeline_pair_table(const BellPipeline& p) {
  auto e1 = resolve_in_basis(frame_state(p.final_state, p.layout, {"M1"}, Isolation::kIsolated),
                             p.model1.pointer.outcome_states(), p.model1.pointer.outcome_labels());
  auto e2 = resolve_in_basis(frame_state(p.final_state, p.layout, {"M2"}, Isolation::kIsolated),
                             p.model2.pointer.outcome_states(), p.model2.pointer.outcome_labels());
  return joint_distribution(p.final_state, p.layout, {{"M1"}, {"M2"}}, {std::move(e1), std::move(e2)},
                            Isolation::kIsolated);
}

std::vector<double> device_diagonal(const BellPipeline& p, const std::string& device) {
  const auto rho = frame_state(p.final_state, p.layout, {device}).matrix();
  std::vector<double> d;
  for (std::size_t i = 0; i < rho.rows(); ++i) d.push_back(rho(i, i).real());
  return d;
}

}  // namespace

BellResult bell_run(const SchmidtCoefficients& c, double theta1, double theta2) {
  const auto pipe = bell_pipeline(c, theta1, theta2);
  auto joint = pipeline_pair_table(pipe);
  const auto closed = bell_joint_quantum_closed(c, theta1, theta2);
  auto factorized = bell_joint_factorized_closed(c, theta1, theta2);
  auto marginal = bell_marginal_closed(c, theta1);

  const double pipeline_dev = max_abs_diff(joint, closed);

  const auto m1 = marginalize(joint, {0});
  const auto diag = device_diagonal(pipe, "M1");
  double marginal_dev = 0.0;
  for (std::size_t j = 0; j < 2; ++j) {
    marginal_dev = std::max(marginal_dev, std::abs(m1.probabilities()[j] - marginal[j]));
    marginal_dev = std::max(marginal_dev, std::abs(diag[j + 1] - marginal[j]));
  }

  const auto shifted = bell_pipeline(c, theta1, theta2 + std::numbers::pi / 3.0);
  const auto diag_shifted = device_diagonal(shifted, "M1");
  double no_signal = 0.0;
  for (std::size_t i = 0; i < diag.size(); ++i) {
    no_signal = std::max(no_signal, std::abs(diag[i] - diag_shifted[i]));
  }

  std::vector<Check> checks{
      make_check("pipeline joint equals closed-form quantum joint", pipeline_dev, tol::kDualPath),
      make_check("M1 marginal equals closed form", marginal_dev, tol::kDualPath),
      make_check("M1 marginal independent of second setting", no_signal, tol::kDualPath),
  };
  return {c,
          theta1,
          theta2,
          std::move(marginal),
          std::move(joint),
          std::move(factorized),
          pipeline_dev,
          marginal_dev,
          no_signal,
          std::move(checks)};
}

ExtendedBellResult extended_bell_run(const SchmidtCoefficients& c, double theta1, double theta2) {
  const auto pipe = bell_pipeline(c, theta1, theta2);
  CompositeLayout layout({{"P1", 2}, {"M1", 3}, {"P2", 2}, {"M2", 3}, {"Mt1", 3}, {"Mt2", 3}});

  // Post-measurement Schmidt-label states of P_i + M_i.
  const std::array<const StateVector*, 2> phi1{&up(), &down()};
  const std::array<const StateVector*, 2> phi2{&down(), &up()};
  const CompositeLayout closed1({{"P1", 2}, {"M1", 3}});
  const CompositeLayout closed2({{"P2", 2}, {"M2", 3}});
  const auto u1 = measurement_unitary(pipe.model1, closed1);
  const auto u2 = measurement_unitary(pipe.model2, closed2);
  std::vector<StateVector> chi1;
  std::vector<StateVector> chi2;
  for (std::size_t l = 0; l < 2; ++l) {
    chi1.push_back(apply_unitary(u1, tensor_product(*phi1[l], pipe.model1.pointer.ready())));
    chi2.push_back(apply_unitary(u2, tensor_product(*phi2[l], pipe.model2.pointer.ready())));
  }
  const MeasurementModel rec1{{"P1", "M1"}, "Mt1", chi1, PointerMap::standard("Mt1", record_axis()), true};
  const MeasurementModel rec2{{"P2", "M2"}, "Mt2", chi2, PointerMap::standard("Mt2", record_axis()), true};

  StateVector whole = tensor_product(tensor_product(pipe.final_state, rec1.pointer.ready()),
                                     rec2.pointer.ready());
  whole = apply_measurement(rec1, layout, whole);
  whole = apply_measurement(rec2, layout, whole);

  std::vector<Complex> expected(layout.total_dim());
  for (std::size_t l = 0; l < 2; ++l) {
    const auto term = tensor_product(
        tensor_product(chi1[l].amplitudes(), chi2[l].amplitudes()),
        tensor_product(rec1.pointer.outcome_state(l).amplitudes(),
                       rec2.pointer.outcome_state(l).amplitudes()));
    expected = add(std::move(expected), term, c[l]);
  }
  const double state_dev = max_abs_diff(expected, whole.amplitudes());

  auto resolve = [&](const std::string& device, const PointerMap& pointer) {
    return resolve_in_basis(frame_state(whole, layout, {device}, Isolation::kIsolated),
                            pointer.outcome_states(), pointer.outcome_labels());
  };
  std::vector<InternalStateEnsemble> ensembles{
      resolve("Mt1", rec1.pointer), resolve("Mt2", rec2.pointer),
      resolve("M1", pipe.model1.pointer), resolve("M2", pipe.model2.pointer)};
  auto four = joint_distribution(whole, layout, {{"Mt1"}, {"Mt2"}, {"M1"}, {"M2"}}, ensembles,
                                 Isolation::kIsolated);
  auto four_closed = extended_joint_closed(c, theta1, theta2);
  auto pair = marginalize(four, {2, 3});
  auto records = marginalize(four, {0, 1});
  auto quantum = bell_joint_quantum_closed(c, theta1, theta2);
  auto factorized = bell_joint_factorized_closed(c, theta1, theta2);

  double record_dev = 0.0;
  for (std::size_t l1 = 0; l1 < 2; ++l1) {
    for (std::size_t l2 = 0; l2 < 2; ++l2) {
      const double expect = l1 == l2 ? std::norm(c[l1]) : 0.0;
      record_dev = std::max(record_dev, std::abs(records.at({l1, l2}) - expect));
    }
  }
  const double four_dev = max_abs_diff(four, four_closed);
  const double fact_dev = max_abs_diff(pair, factorized);
  const double disturbance = max_abs_diff(pair, quantum);

  std::vector<Check> checks{
      make_check("six-system state matches record expansion", state_dev, tol::kDualPath),
      make_check("four-device joint equals intuitive joint", four_dev, tol::kDualPath),
      make_check("device pair marginal equals factorized joint", fact_dev, tol::kDualPath),
      make_check("record marginal equals |c_l|^2 delta", record_dev, tol::kDualPath),
  };
  return {c,
          theta1,
          theta2,
          std::move(layout),
          std::move(whole),
          std::move(four),
          std::move(four_closed),
          std::move(pair),
          std::move(records),
          std::move(quantum),
          std::move(factorized),
          state_dev,
          four_dev,
          fact_dev,
          record_dev,
          disturbance,
          std::move(checks)};
}

std::vector<std::size_t> sample_counts(const JointDistribution& jd, std::size_t shots,
                                       std::mt19937_64& rng) {
  const auto p = jd.probabilities();
  std::vector<std::size_t> counts(p.size(), 0);
  std::size_t last_nonzero = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) last_nonzero = i;
  }
  for (std::size_t s = 0; s < shots; ++s) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    double cumulative = 0.0;
    std::size_t pick = last_nonzero;
    for (std::size_t i = 0; i < p.size(); ++i) {
      cumulative += p[i];
      if (u < cumulative && p[i] > 0.0) {
        pick = i;
        break;
      }
    }
    ++counts[pick];
  }
  return counts;
}

}  // namespace qframes
