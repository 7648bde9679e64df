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

#ifndef QFRAMES_TENSOR_HPP
#define QFRAMES_TENSOR_HPP

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace qframes {

using Complex = std::complex<double>;

/// Dense complex matrix, row-major. Entries are always finite.
class ComplexMatrix {
 public:
  /// Zero matrix.
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const Complex> values);
  /// |a><b|
  static ComplexMatrix outer(std::span<const Complex> a, std::span<const Complex> b);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  std::span<const Complex> entries() const { return entries_; }

  /// Column c as a contiguous copy.
  std::vector<Complex> column(std::size_t c) const;

  ComplexMatrix adjoint() const;
  Complex trace() const;
  double max_abs() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scale);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Complex> entries_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex scale, ComplexMatrix m);
std::vector<Complex> operator*(const ComplexMatrix& m, std::span<const Complex> v);

/// max |a_ij - b_ij|; throws LayoutError on shape mismatch.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
double max_abs_diff(std::span<const Complex> a, std::span<const Complex> b);
/// max |H - H^dagger|
double hermiticity_defect(const ComplexMatrix& h);
/// max |U^dagger U - I|
double unitarity_defect(const ComplexMatrix& u);

Complex inner(std::span<const Complex> a, std::span<const Complex> b);
double norm(std::span<const Complex> v);

/// Unit-norm complex vector (norm 1 within tol::kStateNorm).
class StateVector {
 public:
  explicit StateVector(std::vector<Complex> amplitudes);

  /// Scales a nonzero vector to unit norm.
  static StateVector normalized(std::vector<Complex> amplitudes);
  static StateVector basis(std::size_t dim, std::size_t index);

  std::size_t dim() const { return amplitudes_.size(); }
  std::span<const Complex> amplitudes() const { return amplitudes_; }
  const Complex& operator[](std::size_t i) const { return amplitudes_[i]; }

  ComplexMatrix projector() const;
  /// Multiplies by a unit-modulus phase.
  StateVector with_phase(double phase) const;

  friend bool operator==(const StateVector&, const StateVector&) = default;

 private:
  std::vector<Complex> amplitudes_;
};

Complex inner(const StateVector& a, const StateVector& b);
/// |<a|b>|
double overlap(const StateVector& a, const StateVector& b);

/// A set of subsystem labels. Members are kept sorted; duplicates are rejected.
class SubsystemSet {
 public:
  SubsystemSet() = default;
  SubsystemSet(std::initializer_list<std::string> labels);
  explicit SubsystemSet(std::vector<std::string> labels);

  const std::vector<std::string>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(const std::string& label) const;
  bool is_subset_of(const SubsystemSet& other) const;
  bool intersects(const SubsystemSet& other) const;
  SubsystemSet united(const SubsystemSet& other) const;

  /// "{A,B}"
  std::string to_string() const;

  friend bool operator==(const SubsystemSet&, const SubsystemSet&) = default;

 private:
  std::vector<std::string> members_;
};

struct Subsystem {
  std::string label;
  std::size_t dim;
};

/// Ordered registry of labeled subsystems. The first subsystem is the most
/// significant tensor index (row-major composition).
class CompositeLayout {
 public:
  explicit CompositeLayout(std::vector<Subsystem> subsystems);

  const std::vector<Subsystem>& subsystems() const { return subsystems_; }
  std::size_t size() const { return subsystems_.size(); }
  std::size_t total_dim() const { return total_dim_; }

  bool contains(const std::string& label) const;
  std::size_t position(const std::string& label) const;
  std::size_t local_dim(const std::string& label) const;
  /// Stride of a subsystem's digit in the composite index.
  std::size_t stride(std::size_t position) const { return strides_[position]; }

  /// Throws UnknownSubsystemError if any member is absent.
  void validate(const SubsystemSet& s) const;
  std::size_t dim_of(const SubsystemSet& s) const;
  /// Labels of s in layout order.
  std::vector<std::string> ordered(const SubsystemSet& s) const;
  /// Sub-layout of s, in layout order.
  CompositeLayout restricted(const SubsystemSet& s) const;
  SubsystemSet all() const;
  SubsystemSet complement(const SubsystemSet& s) const;

 private:
  std::vector<Subsystem> subsystems_;
  std::vector<std::size_t> strides_;
  std::size_t total_dim_ = 1;
};

/// Composite offsets for a split of the layout into an ordered target list and
/// its complement (in layout order): full index = target[i] + rest[k].
struct IndexSplit {
  std::vector<std::size_t> target;
  std::vector<std::size_t> rest;
};
IndexSplit split_indices(const CompositeLayout& layout, std::span<const std::string> targets);

StateVector tensor_product(const StateVector& a, const StateVector& b);
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);
std::vector<Complex> tensor_product(std::span<const Complex> a, std::span<const Complex> b);

/// Tr over everything outside keep. Output in layout order of keep.
ComplexMatrix partial_trace(const ComplexMatrix& rho, const CompositeLayout& layout,
                            const SubsystemSet& keep);
/// Reduced density matrix of a pure state onto keep (layout order).
ComplexMatrix reduce_pure(std::span<const Complex> psi, const CompositeLayout& layout,
                          const SubsystemSet& keep);
/// As reduce_pure, with output factors in the given order.
ComplexMatrix reduce_pure_ordered(std::span<const Complex> psi, const CompositeLayout& layout,
                                  std::span<const std::string> order);

/// Eigen-decomposition of a Hermitian matrix. Values descending, eigenvectors
/// as orthonormal columns, first significant component real positive.
struct HermitianEigen {
  std::vector<double> values;
  ComplexMatrix vectors;
  /// Groups of consecutive indices whose eigenvalues lie within tol::kDegeneracy.
  /// Singletons are not listed.
  std::vector<std::vector<std::size_t>> degenerate_blocks;

  std::vector<Complex> vector(std::size_t k) const { return vectors.column(k); }
};

/// Cyclic Jacobi. Throws PreconditionError if h is not Hermitian.
HermitianEigen eig_hermitian(const ComplexMatrix& h);

/// Throws PreconditionError if u is not unitary or dims differ.
StateVector apply_unitary(const ComplexMatrix& u, const StateVector& psi);

/// exp(-i h t), with hbar = 1.
ComplexMatrix expm_hermitian(const ComplexMatrix& h, double t);

/// Lifts an operator on the ordered targets to the whole layout (identity elsewhere).
ComplexMatrix embed_operator(const ComplexMatrix& op, const CompositeLayout& layout,
                             std::span<const std::string> targets);
/// Applies an operator on the ordered targets to a full state without embedding.
std::vector<Complex> apply_local(const ComplexMatrix& op, const CompositeLayout& layout,
                                 std::span<const std::string> targets,
                                 std::span<const Complex> psi);

}  // namespace qframes

#endif  // QFRAMES_TENSOR_HPP
