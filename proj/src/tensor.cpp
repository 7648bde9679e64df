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

#include "qframes/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qframes/errors.hpp"
#include "qframes/tolerances.hpp"

namespace qframes {

namespace {

void require_finite(std::span<const Complex> values) {
  for (const auto& z : values) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw PreconditionError("matrix entry is not finite");
    }
  }
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw LayoutError("shape mismatch: " + std::to_string(a.rows()) + "x" +
                      std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                      std::to_string(b.cols()));
  }
}

}  // namespace

// ComplexMatrix

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {
  if (rows == 0 || cols == 0) throw LayoutError("matrix dimensions must be positive");
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows == 0 || cols == 0) throw LayoutError("matrix dimensions must be positive");
  if (entries_.size() != rows * cols) {
    throw LayoutError("entry count " + std::to_string(entries_.size()) + " != rows*cols");
  }
  require_finite(entries_);
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> a, std::span<const Complex> b) {
  ComplexMatrix m(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) m(i, j) = a[i] * std::conj(b[j]);
  }
  return m;
}

std::vector<Complex> ComplexMatrix::column(std::size_t c) const {
  std::vector<Complex> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  }
  return out;
}

Complex ComplexMatrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : entries_) m = std::max(m, std::abs(z));
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_shape(*this, other);
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_shape(*this, other);
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  for (auto& z : entries_) z *= scale;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(Complex scale, ComplexMatrix m) { return m *= scale; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw LayoutError("matrix product: inner dimensions differ");
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

std::vector<Complex> operator*(const ComplexMatrix& m, std::span<const Complex> v) {
  if (m.cols() != v.size()) throw LayoutError("matrix-vector product: dimensions differ");
  std::vector<Complex> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Complex acc = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) acc += m(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b);
  double m = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) {
    m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
  }
  return m;
}

double max_abs_diff(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw LayoutError("vector dimensions differ");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double hermiticity_defect(const ComplexMatrix& h) {
  if (!h.is_square()) throw PreconditionError("Hermiticity requires a square matrix");
  double m = 0.0;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    for (std::size_t j = i; j < h.cols(); ++j) {
      m = std::max(m, std::abs(h(i, j) - std::conj(h(j, i))));
    }
  }
  return m;
}

double unitarity_defect(const ComplexMatrix& u) {
  if (!u.is_square()) throw PreconditionError("unitarity requires a square matrix");
  return max_abs_diff(u.adjoint() * u, ComplexMatrix::identity(u.rows()));
}

Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw LayoutError("inner product: dimensions differ");
  Complex acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

double norm(std::span<const Complex> v) {
  double acc = 0.0;
  for (const auto& z : v) acc += std::norm(z);
  return std::sqrt(acc);
}

// StateVector

StateVector::StateVector(std::vector<Complex> amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.empty()) throw LayoutError("state vector must have positive dimension");
  require_finite(amplitudes_);
  const double n = norm(amplitudes_);
  if (std::abs(n - 1.0) > tol::kStateNorm) {
    std::ostringstream msg;
    msg << "state vector norm " << n << " is not 1";
    throw PreconditionError(msg.str());
  }
}

StateVector StateVector::normalized(std::vector<Complex> amplitudes) {
  require_finite(amplitudes);
  const double n = norm(amplitudes);
  if (n == 0.0) throw PreconditionError("cannot normalize the zero vector");
  for (auto& z : amplitudes) z /= n;
  return StateVector(std::move(amplitudes));
}

StateVector StateVector::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw LayoutError("basis index out of range");
  std::vector<Complex> v(dim);
  v[index] = 1.0;
  return StateVector(std::move(v));
}

ComplexMatrix StateVector::projector() const {
  return ComplexMatrix::outer(amplitudes_, amplitudes_);
}

StateVector StateVector::with_phase(double phase) const {
  auto v = amplitudes_;
  const Complex f = std::polar(1.0, phase);
  for (auto& z : v) z *= f;
  return StateVector(std::move(v));
}

Complex inner(const StateVector& a, const StateVector& b) {
  return inner(a.amplitudes(), b.amplitudes());
}

double overlap(const StateVector& a, const StateVector& b) { return std::abs(inner(a, b)); }

// SubsystemSet

SubsystemSet::SubsystemSet(std::initializer_list<std::string> labels)
    : SubsystemSet(std::vector<std::string>(labels)) {}

SubsystemSet::SubsystemSet(std::vector<std::string> labels) : members_(std::move(labels)) {
  std::sort(members_.begin(), members_.end());
  if (std::adjacent_find(members_.begin(), members_.end()) != members_.end()) {
    throw PreconditionError("duplicate subsystem label in set");
  }
}

bool SubsystemSet::contains(const std::string& label) const {
  return std::binary_search(members_.begin(), members_.end(), label);
}

bool SubsystemSet::is_subset_of(const SubsystemSet& other) const {
  return std::includes(other.members_.begin(), other.members_.end(), members_.begin(),
                       members_.end());
}

bool SubsystemSet::intersects(const SubsystemSet& other) const {
  return std::any_of(members_.begin(), members_.end(),
                     [&](const std::string& l) { return other.contains(l); });
}

SubsystemSet SubsystemSet::united(const SubsystemSet& other) const {
  std::vector<std::string> out;
  std::set_union(members_.begin(), members_.end(), other.members_.begin(), other.members_.end(),
                 std::back_inserter(out));
  return SubsystemSet(std::move(out));
}

std::string SubsystemSet::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (i) s += ",";
    s += members_[i];
  }
  return s + "}";
}

// CompositeLayout

CompositeLayout::CompositeLayout(std::vector<Subsystem> subsystems)
    : subsystems_(std::move(subsystems)) {
  if (subsystems_.empty()) throw LayoutError("layout must contain at least one subsystem");
  for (std::size_t i = 0; i < subsystems_.size(); ++i) {
    if (subsystems_[i].dim < 2) {
      throw LayoutError("subsystem '" + subsystems_[i].label + "' has local dimension < 2");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (subsystems_[j].label == subsystems_[i].label) {
        throw LayoutError("duplicate subsystem label '" + subsystems_[i].label + "'");
      }
    }
  }
  strides_.assign(subsystems_.size(), 1);
  for (std::size_t i = subsystems_.size(); i-- > 0;) {
    strides_[i] = total_dim_;
    total_dim_ *= subsystems_[i].dim;
  }
}

bool CompositeLayout::contains(const std::string& label) const {
  return std::any_of(subsystems_.begin(), subsystems_.end(),
                     [&](const Subsystem& s) { return s.label == label; });
}

std::size_t CompositeLayout::position(const std::string& label) const {
  for (std::size_t i = 0; i < subsystems_.size(); ++i) {
    if (subsystems_[i].label == label) return i;
  }
  throw UnknownSubsystemError("unknown subsystem '" + label + "'");
}

std::size_t CompositeLayout::local_dim(const std::string& label) const {
  return subsystems_[position(label)].dim;
}

void CompositeLayout::validate(const SubsystemSet& s) const {
  for (const auto& l : s.members()) (void)position(l);
}

std::size_t CompositeLayout::dim_of(const SubsystemSet& s) const {
  std::size_t d = 1;
  for (const auto& l : s.members()) d *= local_dim(l);
  return d;
}

std::vector<std::string> CompositeLayout::ordered(const SubsystemSet& s) const {
  validate(s);
  std::vector<std::string> out;
  for (const auto& sub : subsystems_) {
    if (s.contains(sub.label)) out.push_back(sub.label);
  }
  return out;
}

CompositeLayout CompositeLayout::restricted(const SubsystemSet& s) const {
  validate(s);
  std::vector<Subsystem> out;
  for (const auto& sub : subsystems_) {
    if (s.contains(sub.label)) out.push_back(sub);
  }
  return CompositeLayout(std::move(out));
}

SubsystemSet CompositeLayout::all() const {
  std::vector<std::string> labels;
  for (const auto& s : subsystems_) labels.push_back(s.label);
  return SubsystemSet(std::move(labels));
}

SubsystemSet CompositeLayout::complement(const SubsystemSet& s) const {
  validate(s);
  std::vector<std::string> labels;
  for (const auto& sub : subsystems_) {
    if (!s.contains(sub.label)) labels.push_back(sub.label);
  }
  return SubsystemSet(std::move(labels));
}

// Index bookkeeping

namespace {

// Offsets of every multi-index over `positions`, enumerated row-major in the
// given order (last position fastest).
std::vector<std::size_t> offsets_for(const CompositeLayout& layout,
                                     const std::vector<std::size_t>& positions) {
  std::vector<std::size_t> out{0};
  for (std::size_t p : positions) {
    const std::size_t d = layout.subsystems()[p].dim;
    const std::size_t stride = layout.stride(p);
    std::vector<std::size_t> next;
    next.reserve(out.size() * d);
    for (std::size_t base : out) {
      for (std::size_t digit = 0; digit < d; ++digit) next.push_back(base + digit * stride);
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace

IndexSplit split_indices(const CompositeLayout& layout, std::span<const std::string> targets) {
  std::vector<std::size_t> target_pos;
  std::vector<bool> used(layout.size(), false);
  for (const auto& label : targets) {
    const std::size_t p = layout.position(label);
    if (used[p]) throw PreconditionError("subsystem '" + label + "' listed twice");
    used[p] = true;
    target_pos.push_back(p);
  }
  std::vector<std::size_t> rest_pos;
  for (std::size_t p = 0; p < layout.size(); ++p) {
    if (!used[p]) rest_pos.push_back(p);
  }
  return {offsets_for(layout, target_pos), offsets_for(layout, rest_pos)};
}

// Tensor products

std::vector<Complex> tensor_product(std::span<const Complex> a, std::span<const Complex> b) {
  std::vector<Complex> out(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i * b.size() + j] = a[i] * b[j];
  }
  return out;
}

StateVector tensor_product(const StateVector& a, const StateVector& b) {
  return StateVector(tensor_product(a.amplitudes(), b.amplitudes()));
}

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ar = 0; ar < a.rows(); ++ar) {
    for (std::size_t ac = 0; ac < a.cols(); ++ac) {
      const Complex s = a(ar, ac);
      if (s == Complex{}) continue;
      for (std::size_t br = 0; br < b.rows(); ++br) {
        for (std::size_t bc = 0; bc < b.cols(); ++bc) {
          out(ar * b.rows() + br, ac * b.cols() + bc) = s * b(br, bc);
        }
      }
    }
  }
  return out;
}

// Reductions

ComplexMatrix partial_trace(const ComplexMatrix& rho, const CompositeLayout& layout,
                            const SubsystemSet& keep) {
  if (!rho.is_square() || rho.rows() != layout.total_dim()) {
    throw LayoutError("density matrix dimension " + std::to_string(rho.rows()) +
                      " does not match layout dimension " + std::to_string(layout.total_dim()));
  }
  if (keep.empty()) throw PreconditionError("partial trace must keep at least one subsystem");
  const auto order = layout.ordered(keep);
  const auto split = split_indices(layout, order);
  const std::size_t dk = split.target.size();
  ComplexMatrix out(dk, dk);
  for (std::size_t i = 0; i < dk; ++i) {
    for (std::size_t j = 0; j < dk; ++j) {
      Complex acc = 0.0;
      for (std::size_t k : split.rest) acc += rho(split.target[i] + k, split.target[j] + k);
      out(i, j) = acc;
    }
  }
  return out;
}

ComplexMatrix reduce_pure_ordered(std::span<const Complex> psi, const CompositeLayout& layout,
                                  std::span<const std::string> order) {
  if (psi.size() != layout.total_dim()) {
    throw LayoutError("state dimension " + std::to_string(psi.size()) +
                      " does not match layout dimension " + std::to_string(layout.total_dim()));
  }
  if (order.empty()) throw PreconditionError("reduction must keep at least one subsystem");
  const auto split = split_indices(layout, order);
  const std::size_t dk = split.target.size();
  ComplexMatrix out(dk, dk);
  for (std::size_t i = 0; i < dk; ++i) {
    for (std::size_t j = i; j < dk; ++j) {
      Complex acc = 0.0;
      for (std::size_t k : split.rest) {
        acc += psi[split.target[i] + k] * std::conj(psi[split.target[j] + k]);
      }
      out(i, j) = acc;
      out(j, i) = std::conj(acc);
    }
    out(i, i) = out(i, i).real();
  }
  return out;
}

ComplexMatrix reduce_pure(std::span<const Complex> psi, const CompositeLayout& layout,
                          const SubsystemSet& keep) {
  const auto order = layout.ordered(keep);
  return reduce_pure_ordered(psi, layout, order);
}

// Evolution

StateVector apply_unitary(const ComplexMatrix& u, const StateVector& psi) {
  if (!u.is_square() || u.cols() != psi.dim()) {
    throw PreconditionError("unitary dimension does not match state dimension");
  }
  if (unitarity_defect(u) > tol::kUnitarity) throw PreconditionError("operator is not unitary");
  return StateVector(u * psi.amplitudes());
}

ComplexMatrix expm_hermitian(const ComplexMatrix& h, double t) {
  const auto eig = eig_hermitian(h);
  const std::size_t n = h.rows();
  ComplexMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const Complex phase = std::polar(1.0, -eig.values[k] * t);
    for (std::size_t i = 0; i < n; ++i) {
      const Complex vi = eig.vectors(i, k) * phase;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += vi * std::conj(eig.vectors(j, k));
    }
  }
  return out;
}

ComplexMatrix embed_operator(const ComplexMatrix& op, const CompositeLayout& layout,
                             std::span<const std::string> targets) {
  const auto split = split_indices(layout, targets);
  if (!op.is_square() || op.rows() != split.target.size()) {
    throw LayoutError("operator dimension does not match target subsystems");
  }
  ComplexMatrix out(layout.total_dim(), layout.total_dim());
  for (std::size_t k : split.rest) {
    for (std::size_t i = 0; i < split.target.size(); ++i) {
      for (std::size_t j = 0; j < split.target.size(); ++j) {
        out(split.target[i] + k, split.target[j] + k) = op(i, j);
      }
    }
  }
  return out;
}

std::vector<Complex> apply_local(const ComplexMatrix& op, const CompositeLayout& layout,
                                 std::span<const std::string> targets,
                                 std::span<const Complex> psi) {
  if (psi.size() != layout.total_dim()) throw LayoutError("state dimension does not match layout");
  const auto split = split_indices(layout, targets);
  const std::size_t dt = split.target.size();
  if (!op.is_square() || op.rows() != dt) {
    throw LayoutError("operator dimension does not match target subsystems");
  }
  std::vector<Complex> out(psi.size());
  std::vector<Complex> slice(dt);
  for (std::size_t k : split.rest) {
    for (std::size_t j = 0; j < dt; ++j) slice[j] = psi[split.target[j] + k];
    for (std::size_t i = 0; i < dt; ++i) {
      Complex acc = 0.0;
      for (std::size_t j = 0; j < dt; ++j) acc += op(i, j) * slice[j];
      out[split.target[i] + k] = acc;
    }
  }
  return out;
}

}  // namespace qframes
