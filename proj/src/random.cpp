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

#include "qframes/random.hpp"

#include <cmath>
#include <numbers>

namespace qframes::rnd {

double uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform(rng);
}

double normal(std::mt19937_64& rng) {
  double u1 = uniform(rng);
  while (u1 == 0.0) u1 = uniform(rng);
  const double u2 = uniform(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Complex complex_normal(std::mt19937_64& rng) {
  const double re = normal(rng);
  const double im = normal(rng);
  return {re, im};
}

StateVector state(std::mt19937_64& rng, std::size_t dim) {
  std::vector<Complex> v(dim);
  for (auto& z : v) z = complex_normal(rng);
  return StateVector::normalized(std::move(v));
}

ComplexMatrix hermitian(std::mt19937_64& rng, std::size_t dim) {
  ComplexMatrix g(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) g(i, j) = complex_normal(rng);
  }
  return 0.5 * (g + g.adjoint());
}

ComplexMatrix unitary(std::mt19937_64& rng, std::size_t dim) {
  ComplexMatrix u(dim, dim);
  for (std::size_t c = 0; c < dim; ++c) {
    std::vector<Complex> v(dim);
    for (auto& z : v) z = complex_normal(rng);
    // Two passes of modified Gram-Schmidt.
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < c; ++k) {
        Complex proj = 0.0;
        for (std::size_t r = 0; r < dim; ++r) proj += std::conj(u(r, k)) * v[r];
        for (std::size_t r = 0; r < dim; ++r) v[r] -= proj * u(r, k);
      }
    }
    const double n = norm(v);
    for (std::size_t r = 0; r < dim; ++r) u(r, c) = v[r] / n;
  }
  return u;
}

ComplexMatrix density(std::mt19937_64& rng, std::size_t dim) {
  ComplexMatrix g(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) g(i, j) = complex_normal(rng);
  }
  ComplexMatrix rho = g * g.adjoint();
  const Complex t = rho.trace();
  rho *= 1.0 / t.real();
  // Exact Hermitian symmetry.
  return 0.5 * (rho + rho.adjoint());
}

std::vector<StateVector> orthonormal_basis(std::mt19937_64& rng, std::size_t dim) {
  const auto u = unitary(rng, dim);
  std::vector<StateVector> out;
  for (std::size_t c = 0; c < dim; ++c) out.push_back(StateVector::normalized(u.column(c)));
  return out;
}

}  // namespace qframes::rnd
