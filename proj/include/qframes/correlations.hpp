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

#ifndef QFRAMES_CORRELATIONS_HPP
#define QFRAMES_CORRELATIONS_HPP

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "qframes/frames.hpp"
#include "qframes/tensor.hpp"

namespace qframes {

/// Joint probabilities that the i-th member of each system's ensemble is that
/// system's internal state. Dense row-major table, one axis per system.
class JointDistribution {
 public:
  JointDistribution(std::vector<SubsystemSet> systems, std::vector<std::vector<std::string>> axes,
                    std::vector<double> probabilities, bool basis_ambiguous = false,
                    std::size_t clamped_count = 0, Isolation reference = Isolation::kUnverified);

  const std::vector<SubsystemSet>& systems() const { return systems_; }
  const std::vector<std::vector<std::string>>& axes() const { return axes_; }
  std::vector<std::size_t> shape() const;
  std::size_t rank() const { return systems_.size(); }
  std::span<const double> probabilities() const { return probabilities_; }

  double at(std::span<const std::size_t> indices) const;
  double at(std::initializer_list<std::size_t> indices) const {
    return at(std::span<const std::size_t>(indices.begin(), indices.size()));
  }
  std::size_t flat_index(std::span<const std::size_t> indices) const;
  std::vector<std::size_t> unflatten(std::size_t flat) const;

  double total() const;
  /// Set when any input ensemble had a degenerate block: the values depend on
  /// an arbitrary basis choice inside that block.
  bool basis_ambiguous() const { return basis_ambiguous_; }
  /// Entries in [-tol::kNegativeClamp, 0) that were clamped to zero.
  std::size_t clamped_count() const { return clamped_count_; }
  Isolation reference() const { return reference_; }

 private:
  std::vector<SubsystemSet> systems_;
  std::vector<std::vector<std::string>> axes_;
  std::vector<double> probabilities_;
  bool basis_ambiguous_;
  std::size_t clamped_count_;
  Isolation reference_;
};

/// Throws DisjointnessError when any two systems share a subsystem.
void require_disjoint(const std::vector<SubsystemSet>& systems);

/// Tr[pi_1 ... pi_n rho_{S_1+...+S_n}(I)] for pi_i the projector on member
/// indices[i] of ensembles[i]. psi_i is the internal state of I.
double joint_probability(const StateVector& psi_i, const CompositeLayout& layout,
                         const std::vector<SubsystemSet>& systems,
                         const std::vector<InternalStateEnsemble>& ensembles,
                         std::span<const std::size_t> indices);

/// Full table of joint_probability over every index combination.
JointDistribution joint_distribution(const StateVector& psi_i, const CompositeLayout& layout,
                                     const std::vector<SubsystemSet>& systems,
                                     const std::vector<InternalStateEnsemble>& ensembles,
                                     Isolation reference = Isolation::kUnverified);

/// Sums out every system not listed in keep. Kept axes stay in their original order.
JointDistribution marginalize(const JointDistribution& jd, std::span<const std::size_t> keep);
inline JointDistribution marginalize(const JointDistribution& jd,
                                     std::initializer_list<std::size_t> keep) {
  return marginalize(jd, std::span<const std::size_t>(keep.begin(), keep.size()));
}

/// max |a - b| over entries; throws LayoutError on shape mismatch.
double max_abs_diff(const JointDistribution& a, const JointDistribution& b);

}  // namespace qframes

#endif  // QFRAMES_CORRELATIONS_HPP
