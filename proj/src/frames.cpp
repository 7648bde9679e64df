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

#include "qframes/frames.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qframes/errors.hpp"
#include "qframes/tolerances.hpp"

namespace qframes {

namespace {

void check_trace_and_hermiticity(const CompositeLayout& layout, const ComplexMatrix& m) {
  if (!m.is_square() || m.rows() != layout.total_dim()) {
    throw LayoutError("density matrix dimension does not match its layout");
  }
  if (hermiticity_defect(m) > tol::kHermiticity) {
    throw PreconditionError("density matrix is not Hermitian");
  }
  if (std::abs(m.trace() - 1.0) > tol::kProbabilityNormalization) {
    std::ostringstream msg;
    msg << "density matrix trace " << m.trace().real() << " is not 1";
    throw NormalizationError(msg.str());
  }
}

void check_orthonormal(const std::vector<const StateVector*>& states, const char* what) {
  for (std::size_t i = 0; i < states.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (states[i]->dim() != states[j]->dim()) {
        throw LayoutError(std::string(what) + ": states have different dimensions");
      }
      if (std::abs(inner(*states[i], *states[j])) > tol::kOrthonormality) {
        throw PreconditionError(std::string(what) + ": states are not orthogonal");
      }
    }
  }
}

}  // namespace

DensityOperator::DensityOperator(CompositeLayout layout, ComplexMatrix matrix,
                                 Isolation reference)
    : layout_(std::move(layout)), matrix_(std::move(matrix)), reference_(reference) {
  check_trace_and_hermiticity(layout_, matrix_);
  const auto eig = eig_hermitian(matrix_);
  if (eig.values.back() < -tol::kPsdFloor) {
    throw PreconditionError("density matrix has a negative eigenvalue");
  }
}

DensityOperator::DensityOperator(Reduced, CompositeLayout layout, ComplexMatrix matrix,
                                 Isolation reference)
    : layout_(std::move(layout)), matrix_(std::move(matrix)), reference_(reference) {
  // Reductions of unit vectors are positive semidefinite by construction;
  // only the cheap checks are repeated here.
  check_trace_and_hermiticity(layout_, matrix_);
}

InternalStateEnsemble::InternalStateEnsemble(std::vector<EnsembleMember> members,
                                             std::vector<std::vector<std::size_t>> blocks,
                                             BasisSource source, Isolation reference)
    : members_(std::move(members)),
      degenerate_blocks_(std::move(blocks)),
      source_(source),
      reference_(reference) {
  if (members_.empty()) throw PreconditionError("ensemble has no members");
  double total = 0.0;
  std::vector<const StateVector*> states;
  for (const auto& m : members_) {
    if (m.probability < 0.0 || m.probability > 1.0 + tol::kProbabilityNormalization) {
      throw PreconditionError("ensemble probability outside [0,1]");
    }
    total += m.probability;
    states.push_back(&m.state);
  }
  if (std::abs(total - 1.0) > tol::kProbabilityNormalization) {
    std::ostringstream msg;
    msg << "ensemble probabilities sum to " << total;
    throw NormalizationError(msg.str());
  }
  check_orthonormal(states, "ensemble");
  for (const auto& block : degenerate_blocks_) {
    for (std::size_t i : block) {
      if (i >= members_.size()) throw PreconditionError("degenerate block index out of range");
    }
  }
}

bool InternalStateEnsemble::in_degenerate_block(std::size_t index) const {
  return std::any_of(degenerate_blocks_.begin(), degenerate_blocks_.end(), [&](const auto& b) {
    return std::find(b.begin(), b.end(), index) != b.end();
  });
}

std::vector<std::string> InternalStateEnsemble::labels() const {
  std::vector<std::string> out;
  for (const auto& m : members_) out.push_back(m.label);
  return out;
}

DensityOperator frame_state(const StateVector& psi_r, const CompositeLayout& layout,
                            const SubsystemSet& s, Isolation reference) {
  if (s.empty()) throw ContainmentError("described system is empty");
  for (const auto& label : s.members()) {
    if (!layout.contains(label)) {
      throw ContainmentError("system " + s.to_string() +
                             " is not a subsystem of the reference system (missing '" + label +
                             "')");
    }
  }
  if (psi_r.dim() != layout.total_dim()) {
    throw LayoutError("internal state dimension does not match the reference layout");
  }
  auto sub = layout.restricted(s);
  ComplexMatrix m = s.size() == layout.size() ? psi_r.projector()
                                              : reduce_pure(psi_r.amplitudes(), layout, s);
  return DensityOperator(DensityOperator::Reduced{}, std::move(sub), std::move(m), reference);
}

InternalStateEnsemble possible_internal_states(const DensityOperator& rho) {
  const auto eig = eig_hermitian(rho.matrix());
  std::vector<EnsembleMember> members;
  std::vector<std::size_t> kept_index(eig.values.size(), SIZE_MAX);
  for (std::size_t k = 0; k < eig.values.size(); ++k) {
    if (eig.values[k] < tol::kZeroProbability) continue;
    kept_index[k] = members.size();
    members.push_back({StateVector::normalized(eig.vector(k)), std::min(eig.values[k], 1.0),
                       "j" + std::to_string(members.size())});
  }
  std::vector<std::vector<std::size_t>> blocks;
  for (const auto& block : eig.degenerate_blocks) {
    std::vector<std::size_t> mapped;
    for (std::size_t k : block) {
      if (kept_index[k] != SIZE_MAX) mapped.push_back(kept_index[k]);
    }
    if (mapped.size() > 1) blocks.push_back(std::move(mapped));
  }
  return InternalStateEnsemble(std::move(members), std::move(blocks), BasisSource::kEigen,
                               rho.reference());
}

InternalStateEnsemble resolve_in_basis(const DensityOperator& rho,
                                       const std::vector<StateVector>& basis,
                                       std::vector<std::string> labels) {
  if (basis.empty()) throw PreconditionError("empty basis");
  if (labels.size() != basis.size()) throw PreconditionError("one label per basis state required");
  std::vector<EnsembleMember> members;
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const auto& v = basis[j];
    if (v.dim() != rho.dim()) throw LayoutError("basis state dimension does not match rho");
    const auto w = rho.matrix() * v.amplitudes();
    const double p = inner(v.amplitudes(), w).real();
    double residual = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) residual += std::norm(w[i] - p * v[i]);
    if (std::sqrt(residual) > tol::kOrthonormality) {
      throw PreconditionError("basis state '" + labels[j] +
                              "' is not an eigenstate of the frame state");
    }
    if (p < -tol::kNegativeClamp) throw PreconditionError("negative weight on basis state");
    members.push_back({v, std::max(p, 0.0), std::move(labels[j])});
  }
  return InternalStateEnsemble(std::move(members), {}, BasisSource::kSupplied, rho.reference());
}

InternalStateSample sample_internal_state(const InternalStateEnsemble& ensemble,
                                          std::mt19937_64& rng) {
  // 53-bit uniform in [0,1), independent of the standard library's distributions.
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  double cumulative = 0.0;
  std::size_t index = ensemble.size() - 1;
  for (std::size_t j = 0; j < ensemble.size(); ++j) {
    cumulative += ensemble[j].probability;
    if (u < cumulative) {
      index = j;
      break;
    }
  }
  // Never land on a zero-weight tail member through rounding.
  while (index > 0 && ensemble[index].probability == 0.0) --index;
  return {index, ensemble[index].state, ensemble.in_degenerate_block(index)};
}

PointerMap::PointerMap(std::string device_label, StateVector ready,
                       std::vector<std::pair<std::string, StateVector>> outcomes)
    : device_label_(std::move(device_label)), ready_(std::move(ready)), outcomes_(std::move(outcomes)) {
  if (outcomes_.empty()) throw PreconditionError("pointer map needs at least one outcome");
  std::vector<const StateVector*> states{&ready_};
  for (const auto& [label, state] : outcomes_) {
    if (label == kReadyLabel || label == kUnresolvedLabel) {
      throw PreconditionError("outcome label '" + label + "' is reserved");
    }
    states.push_back(&state);
  }
  check_orthonormal(states, "pointer map");
}

PointerMap PointerMap::standard(std::string device_label, std::vector<std::string> outcome_labels) {
  const std::size_t dim = outcome_labels.size() + 1;
  std::vector<std::pair<std::string, StateVector>> outcomes;
  for (std::size_t j = 0; j < outcome_labels.size(); ++j) {
    outcomes.emplace_back(std::move(outcome_labels[j]), StateVector::basis(dim, j + 1));
  }
  return PointerMap(std::move(device_label), StateVector::basis(dim, 0), std::move(outcomes));
}

std::vector<StateVector> PointerMap::outcome_states() const {
  std::vector<StateVector> out;
  for (const auto& o : outcomes_) out.push_back(o.second);
  return out;
}

std::vector<std::string> PointerMap::outcome_labels() const {
  std::vector<std::string> out;
  for (const auto& o : outcomes_) out.push_back(o.first);
  return out;
}

std::string readout(const StateVector& device_state, const PointerMap& pointer) {
  if (device_state.dim() != pointer.dim()) {
    throw LayoutError("device state dimension does not match pointer states");
  }
  const double threshold = 1.0 - tol::kReadout;
  for (const auto& [label, state] : pointer.outcomes()) {
    if (overlap(device_state, state) > threshold) return label;
  }
  if (overlap(device_state, pointer.ready()) > threshold) return std::string(kReadyLabel);
  return std::string(kUnresolvedLabel);
}

bool comparable(const CompositeLayout& layout, const SubsystemSet& r1, const SubsystemSet& r2) {
  layout.validate(r1);
  layout.validate(r2);
  return r1.is_subset_of(r2) || r2.is_subset_of(r1) || !r1.intersects(r2);
}

}  // namespace qframes
