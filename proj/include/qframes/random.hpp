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

#ifndef QFRAMES_RANDOM_HPP
#define QFRAMES_RANDOM_HPP

#include <cstddef>
#include <random>
#include <vector>

#include "qframes/tensor.hpp"

namespace qframes::rnd {

/// Uniform in [0, 1) from the top 53 bits; identical across standard libraries.
double uniform(std::mt19937_64& rng);
double uniform(std::mt19937_64& rng, double lo, double hi);
/// Standard normal via Box-Muller.
double normal(std::mt19937_64& rng);
Complex complex_normal(std::mt19937_64& rng);

StateVector state(std::mt19937_64& rng, std::size_t dim);
ComplexMatrix hermitian(std::mt19937_64& rng, std::size_t dim);
/// Gram-Schmidt on a complex Gaussian matrix.
ComplexMatrix unitary(std::mt19937_64& rng, std::size_t dim);
/// G G^dagger / Tr.
ComplexMatrix density(std::mt19937_64& rng, std::size_t dim);
/// Columns of a random unitary.
std::vector<StateVector> orthonormal_basis(std::mt19937_64& rng, std::size_t dim);

}  // namespace qframes::rnd

#endif  // QFRAMES_RANDOM_HPP
