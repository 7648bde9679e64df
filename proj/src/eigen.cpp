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

// Cyclic Jacobi eigensolver for complex Hermitian matrices.

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qframes/errors.hpp"
#include "qframes/tensor.hpp"
#include "qframes/tolerances.hpp"

namespace qframes {

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kConvergence = 1e-15;

double off_diagonal_sq(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t p = 0; p < a.rows(); ++p) {
    for (std::size_t q = p + 1; q < a.cols(); ++q) s += std::norm(a(p, q));
  }
  return s;
}

// Rotates the (p,q) pair of a so that a(p,q) vanishes, accumulating into v.
// The rotation is diag(1, e^{-i arg a_pq}) followed by the real Jacobi rotation.
void rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
  const Complex apq = a(p, q);
  const double g = std::abs(apq);
  if (g == 0.0) return;
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const Complex phase = std::conj(apq / g);

  const double theta = (aqq - app) / (2.0 * g);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  }
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  const Complex jpp = c;
  const Complex jpq = s;
  const Complex jqp = -s * phase;
  const Complex jqq = c * phase;

  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = akp * jpp + akq * jqp;
    a(k, q) = akp * jpq + akq * jqq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
    a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();

  for (std::size_t k = 0; k < n; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = vkp * jpp + vkq * jqp;
    v(k, q) = vkp * jpq + vkq * jqq;
  }
}

std::size_t first_significant(const ComplexMatrix& v, std::size_t col) {
  for (std::size_t r = 0; r < v.rows(); ++r) {
    if (std::abs(v(r, col)) > tol::kPhaseReference) return r;
  }
  return v.rows();
}

}  // namespace

HermitianEigen eig_hermitian(const ComplexMatrix& h) {
  if (!h.is_square()) throw PreconditionError("eigensolver requires a square matrix");
  if (hermiticity_defect(h) > tol::kHermiticity) {
    throw PreconditionError("eigensolver input is not Hermitian");
  }
  const std::size_t n = h.rows();

  ComplexMatrix a = 0.5 * (h + h.adjoint());
  ComplexMatrix v = ComplexMatrix::identity(n);

  double fro_sq = 0.0;
  for (const auto& z : a.entries()) fro_sq += std::norm(z);
  const double stop = kConvergence * kConvergence * fro_sq;

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    const double off = off_diagonal_sq(a);
    if (off == 0.0 || off <= stop) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) rotate(a, v, p, q);
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i).real() > a(j, j).real();
  });

  HermitianEigen out{std::vector<double>(n), ComplexMatrix(n, n), {}};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, order[k]);
  }

  // Phase convention: first significant component real positive.
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t r = first_significant(out.vectors, k);
    if (r == n) continue;
    const Complex z = out.vectors(r, k);
    const Complex f = std::conj(z) / std::abs(z);
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) *= f;
    out.vectors(r, k) = out.vectors(r, k).real();
  }

  // Degenerate clusters: chain of neighbours within tolerance. Inside a
  // cluster, order by the row of the first significant component.
  std::size_t start = 0;
  while (start < n) {
    std::size_t end = start + 1;
    while (end < n && out.values[end - 1] - out.values[end] <= tol::kDegeneracy) ++end;
    if (end - start > 1) {
      std::vector<std::size_t> block(end - start);
      std::iota(block.begin(), block.end(), start);
      std::vector<std::size_t> sorted = block;
      std::stable_sort(sorted.begin(), sorted.end(), [&](std::size_t i, std::size_t j) {
        return first_significant(out.vectors, i) < first_significant(out.vectors, j);
      });
      ComplexMatrix cols = out.vectors;
      std::vector<double> vals = out.values;
      for (std::size_t b = 0; b < block.size(); ++b) {
        out.values[block[b]] = vals[sorted[b]];
        for (std::size_t r = 0; r < n; ++r) out.vectors(r, block[b]) = cols(r, sorted[b]);
      }
      out.degenerate_blocks.push_back(std::move(block));
    }
    start = end;
  }
  return out;
}

}  // namespace qframes
