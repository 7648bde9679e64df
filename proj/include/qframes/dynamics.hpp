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

#ifndef QFRAMES_DYNAMICS_HPP
#define QFRAMES_DYNAMICS_HPP

#include <array>
#include <string>
#include <vector>

#include "qframes/frames.hpp"
#include "qframes/tensor.hpp"

namespace qframes {

/// Ideal premeasurement: |xi_j>|m_0> -> |xi_j>|m_j>.
struct MeasurementModel {
  /// Measured system.
  SubsystemSet probe;
  /// Label of the device subsystem in the layout.
  std::string device;
  /// Orthonormal states of the probe, one per outcome.
  std::vector<StateVector> measured_basis;
  PointerMap pointer;
  /// When set, measured_basis may span a proper subspace of the probe; the
  /// orthogonal complement is left untouched (identity on the device).
  bool subspace = false;
};

/// Unitary on probe ⊗ device (probe subsystems in layout order, then the
/// device): sum_j |xi_j><xi_j| ⊗ Pi_j, where Pi_j swaps m_0 and m_j and fixes
/// every other pointer state.
/// Throws CompletenessError for an incomplete basis, LayoutError when the
/// device is too small or dimensions disagree.
ComplexMatrix measurement_unitary(const MeasurementModel& model, const CompositeLayout& layout);

/// Target order used by measurement_unitary.
std::vector<std::string> measurement_targets(const MeasurementModel& model,
                                             const CompositeLayout& layout);

/// Applies the measurement unitary to a state of the whole layout; identity elsewhere.
StateVector apply_measurement(const MeasurementModel& model, const CompositeLayout& layout,
                              const StateVector& psi);

/// Spin basis along z rotated by delta about x, with |up> = index 0:
///   {cos(d/2)|up> - sin(d/2)|down>,  sin(d/2)|up> + cos(d/2)|down>}.
std::array<StateVector, 2> rotated_spin_basis(double delta);

/// Finite-time evolution of a closed system's internal state.
StateVector evolve_closed(const StateVector& psi_c, const ComplexMatrix& u);

}  // namespace qframes

#endif  // QFRAMES_DYNAMICS_HPP
