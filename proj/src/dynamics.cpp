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

#include "qframes/dynamics.hpp"

#include <cmath>

#include "qframes/errors.hpp"
#include "qframes/tolerances.hpp"

namespace qframes {

namespace {

void validate(const MeasurementModel& model, const CompositeLayout& layout) {
  if (model.probe.empty()) throw PreconditionError("measurement probe is empty");
  layout.validate(model.probe);
  if (!layout.contains(model.device)) {
    throw UnknownSubsystemError("unknown device subsystem '" + model.device + "'");
  }
  if (model.probe.contains(model.device)) {
    throw PreconditionError("device must not be part of the probe");
  }
  const std::size_t probe_dim = layout.dim_of(model.probe);
  const std::size_t count = model.measured_basis.size();
  if (count == 0) throw CompletenessError("measured basis is empty");
  for (const auto& xi : model.measured_basis) {
    if (xi.dim() != probe_dim) throw LayoutError("measured basis state does not match probe");
  }
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (std::abs(inner(model.measured_basis[i], model.measured_basis[j])) >
          tol::kOrthonormality) {
        throw PreconditionError("measured basis is not orthonormal");
      }
    }
  }
  if (!model.subspace && count != probe_dim) {
    throw CompletenessError("measured basis has " + std::to_string(count) +
                            " states but the probe has dimension " + std::to_string(probe_dim));
  }
  if (model.pointer.outcome_count() != count) {
    throw PreconditionError("pointer outcome count does not match measured basis");
  }
  const std::size_t device_dim = layout.local_dim(model.device);
  if (device_dim < count + 1) {
    throw LayoutError("device '" + model.device + "' has dimension " +
                      std::to_string(device_dim) + ", needs at least " +
                      std::to_string(count + 1));
  }
  if (model.pointer.dim() != device_dim) {
    throw LayoutError("pointer states do not match device dimension");
  }
}

}  // namespace

std::vector<std::string> measurement_targets(const MeasurementModel& model,
                                             const CompositeLayout& layout) {
  auto targets = layout.ordered(model.probe);
  targets.push_back(model.device);
  return targets;
}

ComplexMatrix measurement_unitary(const MeasurementModel& model, const CompositeLayout& layout) {
  validate(model, layout);
  const std::size_t probe_dim = layout.dim_of(model.probe);
  const std::size_t device_dim = model.pointer.dim();
  const auto& m0 = model.pointer.ready();
  const ComplexMatrix p0 = m0.projector();

  ComplexMatrix u(probe_dim * device_dim, probe_dim * device_dim);
  ComplexMatrix recorded(probe_dim, probe_dim);
  for (std::size_t j = 0; j < model.measured_basis.size(); ++j) {
    const auto& mj = model.pointer.outcome_state(j);
    ComplexMatrix swap = ComplexMatrix::identity(device_dim) - p0 - mj.projector() +
                         ComplexMatrix::outer(m0.amplitudes(), mj.amplitudes()) +
                         ComplexMatrix::outer(mj.amplitudes(), m0.amplitudes());
    const ComplexMatrix branch = model.measured_basis[j].projector();
    recorded += branch;
    u += tensor_product(branch, swap);
  }
  if (model.subspace) {
    const ComplexMatrix idle = ComplexMatrix::identity(probe_dim) - recorded;
    u += tensor_product(idle, ComplexMatrix::identity(device_dim));
  }
  return u;
}

StateVector apply_measurement(const MeasurementModel& model, const CompositeLayout& layout,
                              const StateVector& psi) {
  const auto u = measurement_unitary(model, layout);
  if (unitarity_defect(u) > tol::kUnitarity) throw PreconditionError("operator is not unitary");
  const auto targets = measurement_targets(model, layout);
  return StateVector(apply_local(u, layout, targets, psi.amplitudes()));
}

std::array<StateVector, 2> rotated_spin_basis(double delta) {
  const double c = std::cos(delta / 2.0);
  const double s = std::sin(delta / 2.0);
  return {StateVector({c, -s}), StateVector({s, c})};
}

StateVector evolve_closed(const StateVector& psi_c, const ComplexMatrix& u) {
  return apply_unitary(u, psi_c);
}

}  // namespace qframes
