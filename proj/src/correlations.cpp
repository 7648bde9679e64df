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

#include "qframes/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qframes/errors.hpp"
#include "qframes/tolerances.hpp"

namespace qframes {

JointDistribution::JointDistribution(std::vector<SubsystemSet> systems,
                                     std::vector<std::vector<std::string>> axes,
                                     std::vector<double> probabilities, bool basis_ambiguous,
                                     std::size_t clamped_count, Isolation reference)
    : systems_(std::move(systems)),
      axes_(std::move(axes)),
      probabilities_(std::move(probabilities)),
      basis_ambiguous_(basis_ambiguous),
      clamped_count_(clamped_count),
      reference_(reference) {
  if (systems_.empty()) throw PreconditionError("joint distribution needs at least one system");
  if (axes_.size() != systems_.size()) throw LayoutError("one axis per system required");
  require_disjoint(systems_);
  std::size_t n = 1;
  for (const auto& axis : axes_) {
    if (axis.empty()) throw LayoutError("empty outcome axis");
    n *= axis.size();
  }
  if (probabilities_.size() != n) throw LayoutError("table size does not match axes");
  for (double p : probabilities_) {
    if (!(p >= 0.0)) throw PreconditionError("negative or NaN probability in joint table");
  }
  if (std::abs(total() - 1.0) > tol::kProbabilityNormalization) {
    std::ostringstream msg;
    msg << "joint table sums to " << total();
    throw NormalizationError(msg.str());
  }
}

std::vector<std::size_t> JointDistribution::shape() const {
  std::vector<std::size_t> s;
  for (const auto& a : axes_) s.push_back(a.size());
  return s;
}

std::size_t JointDistribution::flat_index(std::span<const std::size_t> indices) const {
  if (indices.size() != axes_.size()) throw LayoutError("index rank does not match table rank");
  std::size_t flat = 0;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] >= axes_[i].size()) throw LayoutError("table index out of range");
    flat = flat * axes_[i].size() + indices[i];
  }
  return flat;
}

std::vector<std::size_t> JointDistribution::unflatten(std::size_t flat) const {
  std::vector<std::size_t> idx(axes_.size());
  for (std::size_t i = axes_.size(); i-- > 0;) {
    idx[i] = flat % axes_[i].size();
    flat /= axes_[i].size();
  }
  return idx;
}

double JointDistribution::at(std::span<const std::size_t> indices) const {
  return probabilities_[flat_index(indices)];
}

double JointDistribution::total() const {
  double t = 0.0;
  for (double p : probabilities_) t += p;
  return t;
}

void require_disjoint(const std::vector<SubsystemSet>& systems) {
  for (std::size_t i = 0; i < systems.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (systems[i].intersects(systems[j])) {
        throw DisjointnessError("systems " + systems[j].to_string() + " and " +
                                systems[i].to_string() +
                                " overlap: their joint probability cannot be defined at all "
                                "(states relative to overlapping systems are not comparable)");
      }
    }
  }
}

namespace {

struct UnionFrame {
  ComplexMatrix rho;
  // Dimension of each system's factor, in system order.
  std::vector<std::size_t> dims;
};

UnionFrame reduce_to_union(const StateVector& psi_i, const CompositeLayout& layout,
                           const std::vector<SubsystemSet>& systems,
                           const std::vector<InternalStateEnsemble>& ensembles) {
  if (systems.empty()) throw PreconditionError("at least one system required");
  if (ensembles.size() != systems.size()) {
    throw PreconditionError("one ensemble per system required");
  }
  require_disjoint(systems);
  std::vector<std::string> order;
  std::vector<std::size_t> dims;
  for (std::size_t i = 0; i < systems.size(); ++i) {
    if (systems[i].empty()) throw PreconditionError("empty system");
    const auto labels = layout.ordered(systems[i]);
    order.insert(order.end(), labels.begin(), labels.end());
    const std::size_t d = layout.dim_of(systems[i]);
    for (const auto& m : ensembles[i].members()) {
      if (m.state.dim() != d) {
        throw LayoutError("ensemble state dimension does not match system " +
                          systems[i].to_string());
      }
    }
    dims.push_back(d);
  }
  return {reduce_pure_ordered(psi_i.amplitudes(), layout, order), std::move(dims)};
}

// Tr[(pi_1 ⊗ ... ⊗ pi_n) rho] with pi_i = |phi_i><phi_i|.
double trace_against_projectors(const UnionFrame& frame,
                                const std::vector<InternalStateEnsemble>& ensembles,
                                std::span<const std::size_t> indices) {
  ComplexMatrix projector = ensembles[0][indices[0]].state.projector();
  for (std::size_t i = 1; i < ensembles.size(); ++i) {
    projector = tensor_product(projector, ensembles[i][indices[i]].state.projector());
  }
  const std::size_t d = frame.rho.rows();
  Complex acc = 0.0;
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) acc += projector(a, b) * frame.rho(b, a);
  }
  return acc.real();
}

}  // namespace

double joint_probability(const StateVector& psi_i, const CompositeLayout& layout,
                         const std::vector<SubsystemSet>& systems,
                         const std::vector<InternalStateEnsemble>& ensembles,
                         std::span<const std::size_t> indices) {
  if (indices.size() != systems.size()) throw PreconditionError("one index per system required");
  const auto frame = reduce_to_union(psi_i, layout, systems, ensembles);
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] >= ensembles[i].size()) throw LayoutError("ensemble index out of range");
  }
  return trace_against_projectors(frame, ensembles, indices);
}

JointDistribution joint_distribution(const StateVector& psi_i, const CompositeLayout& layout,
                                     const std::vector<SubsystemSet>& systems,
                                     const std::vector<InternalStateEnsemble>& ensembles,
                                     Isolation reference) {
  const auto frame = reduce_to_union(psi_i, layout, systems, ensembles);
  std::vector<std::vector<std::string>> axes;
  std::size_t n = 1;
  bool ambiguous = false;
  for (const auto& e : ensembles) {
    axes.push_back(e.labels());
    n *= e.size();
    ambiguous = ambiguous || e.has_degeneracy();
  }
  std::vector<double> table(n);
  std::vector<std::size_t> idx(ensembles.size(), 0);
  std::size_t clamped = 0;
  for (std::size_t flat = 0; flat < n; ++flat) {
    double p = trace_against_projectors(frame, ensembles, idx);
    if (p < 0.0) {
      if (p < -tol::kNegativeClamp) {
        std::ostringstream msg;
        msg << "joint probability " << p << " is below the clamp threshold";
        throw PreconditionError(msg.str());
      }
      p = 0.0;
      ++clamped;
    }
    table[flat] = p;
    for (std::size_t i = idx.size(); i-- > 0;) {
      if (++idx[i] < ensembles[i].size()) break;
      idx[i] = 0;
    }
  }
  return JointDistribution(systems, std::move(axes), std::move(table), ambiguous, clamped,
                           reference);
}

JointDistribution marginalize(const JointDistribution& jd, std::span<const std::size_t> keep) {
  if (keep.empty()) throw PreconditionError("marginal must keep at least one system");
  std::vector<std::size_t> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end()) {
    throw PreconditionError("duplicate system index in marginal");
  }
  if (kept.back() >= jd.rank()) throw LayoutError("marginal system index out of range");

  std::vector<SubsystemSet> systems;
  std::vector<std::vector<std::string>> axes;
  std::size_t n = 1;
  for (std::size_t i : kept) {
    systems.push_back(jd.systems()[i]);
    axes.push_back(jd.axes()[i]);
    n *= jd.axes()[i].size();
  }
  std::vector<double> table(n, 0.0);
  std::vector<std::size_t> sub(kept.size());
  for (std::size_t flat = 0; flat < jd.probabilities().size(); ++flat) {
    const auto idx = jd.unflatten(flat);
    std::size_t out = 0;
    for (std::size_t r = 0; r < kept.size(); ++r) out = out * axes[r].size() + idx[kept[r]];
    table[out] += jd.probabilities()[flat];
  }
  return JointDistribution(std::move(systems), std::move(axes), std::move(table),
                           jd.basis_ambiguous(), 0, jd.reference());
}

double max_abs_diff(const JointDistribution& a, const JointDistribution& b) {
  if (a.shape() != b.shape()) throw LayoutError("joint tables have different shapes");
  double m = 0.0;
  for (std::size_t i = 0; i < a.probabilities().size(); ++i) {
    m = std::max(m, std::abs(a.probabilities()[i] - b.probabilities()[i]));
  }
  return m;
}

}  // namespace qframes
