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

#ifndef QFRAMES_FRAMES_HPP
#define QFRAMES_FRAMES_HPP

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qframes/tensor.hpp"

namespace qframes {

/// Whether the reference system a state was computed from is known to be
/// isolated. Not inferable from the state itself; set by the caller.
enum class Isolation { kUnverified, kIsolated };

/// State of a system relative to a reference system: Hermitian, unit trace,
/// positive semidefinite (eigenvalues >= -tol::kPsdFloor).
class DensityOperator {
 public:
  DensityOperator(CompositeLayout layout, ComplexMatrix matrix,
                  Isolation reference = Isolation::kUnverified);

  const CompositeLayout& layout() const { return layout_; }
  const ComplexMatrix& matrix() const { return matrix_; }
  std::size_t dim() const { return matrix_.rows(); }
  Isolation reference() const { return reference_; }

 private:
  struct Reduced {};
  DensityOperator(Reduced, CompositeLayout layout, ComplexMatrix matrix, Isolation reference);
  friend DensityOperator frame_state(const StateVector&, const CompositeLayout&,
                                     const SubsystemSet&, Isolation);

  CompositeLayout layout_;
  ComplexMatrix matrix_;
  Isolation reference_;
};

struct EnsembleMember {
  StateVector state;
  double probability;
  std::string label;
};

/// Where an ensemble's basis came from.
enum class BasisSource {
  kEigen,     // eigenvectors of the frame state
  kSupplied,  // a caller-supplied basis that diagonalizes the frame state
};

/// Possible internal states of a system with their probabilities.
class InternalStateEnsemble {
 public:
  InternalStateEnsemble(std::vector<EnsembleMember> members,
                        std::vector<std::vector<std::size_t>> degenerate_blocks,
                        BasisSource source, Isolation reference);

  const std::vector<EnsembleMember>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  const EnsembleMember& operator[](std::size_t i) const { return members_[i]; }
  const std::vector<std::vector<std::size_t>>& degenerate_blocks() const {
    return degenerate_blocks_;
  }
  bool has_degeneracy() const { return !degenerate_blocks_.empty(); }
  bool in_degenerate_block(std::size_t index) const;
  BasisSource source() const { return source_; }
  Isolation reference() const { return reference_; }
  std::vector<std::string> labels() const;

 private:
  std::vector<EnsembleMember> members_;
  std::vector<std::vector<std::size_t>> degenerate_blocks_;
  BasisSource source_;
  Isolation reference_;
};

/// rho_S(R) = Tr_{R\S} |psi_R><psi_R|. Returns the projector itself when s is
/// all of R. Throws ContainmentError when s is not inside R.
DensityOperator frame_state(const StateVector& psi_r, const CompositeLayout& layout,
                            const SubsystemSet& s, Isolation reference = Isolation::kUnverified);

/// Eigenstates of rho with eigenvalue >= tol::kZeroProbability, labelled
/// "j0", "j1", ... in descending probability.
InternalStateEnsemble possible_internal_states(const DensityOperator& rho);

/// Ensemble over a supplied orthonormal basis. Each basis vector must be an
/// eigenvector of rho; the basis must carry all of rho's weight. Zero-weight
/// members are kept so distributions over this basis have fixed axes.
InternalStateEnsemble resolve_in_basis(const DensityOperator& rho,
                                       const std::vector<StateVector>& basis,
                                       std::vector<std::string> labels);

struct InternalStateSample {
  std::size_t index;
  StateVector state;
  /// Set when the drawn member belongs to a degenerate block, where the
  /// possible internal states are not unique.
  bool non_unique = false;
};

/// Draws member j with probability p_j. Deterministic for a given engine state.
InternalStateSample sample_internal_state(const InternalStateEnsemble& ensemble,
                                          std::mt19937_64& rng);

/// Ready and outcome states of a measuring device, mutually orthonormal.
class PointerMap {
 public:
  PointerMap(std::string device_label, StateVector ready,
             std::vector<std::pair<std::string, StateVector>> outcomes);

  /// Ready state |0>, outcome j at |j+1>, device dimension outcomes+1.
  static PointerMap standard(std::string device_label, std::vector<std::string> outcome_labels);

  const std::string& device_label() const { return device_label_; }
  const StateVector& ready() const { return ready_; }
  const std::vector<std::pair<std::string, StateVector>>& outcomes() const { return outcomes_; }
  std::size_t outcome_count() const { return outcomes_.size(); }
  std::size_t dim() const { return ready_.dim(); }
  const StateVector& outcome_state(std::size_t j) const { return outcomes_.at(j).second; }
  std::vector<StateVector> outcome_states() const;
  std::vector<std::string> outcome_labels() const;

 private:
  std::string device_label_;
  StateVector ready_;
  std::vector<std::pair<std::string, StateVector>> outcomes_;
};

inline constexpr std::string_view kReadyLabel = "ready";
inline constexpr std::string_view kUnresolvedLabel = "unresolved";

/// Label of the pointer state matching the device state (overlap modulus
/// > 1 - tol::kReadout), "ready", or "unresolved" for anything else.
std::string readout(const StateVector& device_state, const PointerMap& pointer);

/// True iff r1 ⊆ r2, r2 ⊆ r1, or r1 ∩ r2 = ∅.
bool comparable(const CompositeLayout& layout, const SubsystemSet& r1, const SubsystemSet& r2);

}  // namespace qframes

#endif  // QFRAMES_FRAMES_HPP
