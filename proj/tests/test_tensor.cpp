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

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bridge.hpp"
#include "gen.hpp"
#include "oracles.hpp"
#include "qframes/errors.hpp"
#include "qframes/tensor.hpp"

using namespace qframes;
using bridge::lib;
using bridge::ora;

TEST_CASE("tensor product of basis vectors") {
  const auto v = tensor_product(StateVector::basis(2, 0), StateVector::basis(3, 0));
  REQUIRE(v.dim() == 6);
  CHECK(v[0] == Complex(1.0));
  for (std::size_t i = 1; i < 6; ++i) CHECK(v[i] == Complex(0.0));
}

TEST_CASE("identity tensor identity is identity") {
  CHECK(max_abs_diff(tensor_product(ComplexMatrix::identity(2), ComplexMatrix::identity(3)),
                     ComplexMatrix::identity(6)) == 0.0);
}

TEST_CASE("tensor product matches the index formula") {
  gen::for_all(11, 50, [](gen::Gen& g, int) {
    const auto a = g.state(2);
    const auto b = g.state(3);
    const auto v = tensor_product(StateVector(a), StateVector(b));
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 3; ++j) CHECK(std::abs(v[3 * i + j] - a[i] * b[j]) <= 1e-15);

    const auto x = g.hermitian(2);
    const auto y = g.hermitian(3);
    CHECK(oracle::maxdiff(ora(tensor_product(lib(x), lib(y))), oracle::kron(x, y)) <= 1e-14);
  });
}

TEST_CASE("partial trace of the measured spin state gives the device mixture") {
  const double a2 = 0.3;
  const oracle::cvec psi = [&] {
    const auto s1 = oracle::kron(oracle::up(), oracle::basis(3, 1));
    const auto s2 = oracle::kron(oracle::down(), oracle::basis(3, 2));
    oracle::cvec v(6);
    for (std::size_t i = 0; i < 6; ++i) v[i] = std::sqrt(a2) * s1[i] + std::sqrt(1 - a2) * s2[i];
    return v;
  }();
  const CompositeLayout layout({{"P", 2}, {"M", 3}});
  const auto rho = partial_trace(lib(oracle::ketbra(psi, psi)), layout, {"M"});
  ComplexMatrix expect(3, 3);
  expect(1, 1) = a2;
  expect(2, 2) = 1 - a2;
  CHECK(max_abs_diff(rho, expect) <= 1e-15);
}

TEST_CASE("partial trace of a product state keeps the factor") {
  gen::Gen g(5);
  const auto phi = g.state(2);
  const auto chi = g.state(3);
  const auto psi = oracle::kron(phi, chi);
  const CompositeLayout layout({{"A", 2}, {"B", 3}});
  const auto rho = partial_trace(lib(oracle::ketbra(psi, psi)), layout, {"B"});
  CHECK(oracle::maxdiff(ora(rho), oracle::ketbra(chi, chi)) <= 1e-15);
}

TEST_CASE("partial trace matches the index-sum oracle") {
  gen::for_all(12, 40, [](gen::Gen& g, int) {
    const auto psi = g.state(6);
    const CompositeLayout layout({{"A", 2}, {"B", 3}});
    const auto rho = oracle::ketbra(psi, psi);
    CHECK(oracle::maxdiff(ora(partial_trace(lib(rho), layout, {"A"})),
                          oracle::partial_trace(rho, {2, 3}, {true, false})) <= 1e-15);
    CHECK(oracle::maxdiff(ora(reduce_pure(psi, layout, {"B"})),
                          oracle::partial_trace(rho, {2, 3}, {false, true})) <= 1e-15);
  });
}

TEST_CASE("partial trace over non-adjacent subsystems") {
  gen::for_all(13, 20, [](gen::Gen& g, int) {
    const CompositeLayout layout({{"A", 2}, {"B", 3}, {"C", 2}, {"D", 2}});
    const auto rho = g.density(24);
    CHECK(oracle::maxdiff(ora(partial_trace(lib(rho), layout, {"A", "C"})),
                          oracle::partial_trace(rho, {2, 3, 2, 2}, {true, false, true, false})) <=
          1e-14);
    CHECK(oracle::maxdiff(ora(partial_trace(lib(rho), layout, {"D", "B"})),
                          oracle::partial_trace(rho, {2, 3, 2, 2}, {false, true, false, true})) <=
          1e-14);
  });
}

TEST_CASE("reduce_pure_ordered follows the requested order") {
  gen::Gen g(14);
  const auto psi = g.state(12);
  const CompositeLayout layout({{"A", 2}, {"B", 3}, {"C", 2}});
  const std::vector<std::string> order{"C", "A"};
  const auto r = reduce_pure_ordered(psi, layout, order);
  // Oracle: trace out B, then swap the two qubit factors.
  const auto ac = oracle::partial_trace(oracle::ketbra(psi, psi), {2, 3, 2}, {true, false, true});
  oracle::Mat swapped(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      const std::size_t si = (i % 2) * 2 + i / 2;
      const std::size_t sj = (j % 2) * 2 + j / 2;
      swapped(si, sj) = ac(i, j);
    }
  CHECK(oracle::maxdiff(ora(r), swapped) <= 1e-15);
}

TEST_CASE("partial trace rejects bad inputs") {
  const CompositeLayout layout({{"A", 2}, {"B", 3}});
  CHECK_THROWS_AS(partial_trace(ComplexMatrix::identity(5), layout, {"A"}), LayoutError);
  CHECK_THROWS_AS(partial_trace(ComplexMatrix::identity(6), layout, {"Z"}), UnknownSubsystemError);
}

TEST_CASE("layout validation") {
  CHECK_THROWS_AS(CompositeLayout({{"A", 1}}), LayoutError);
  CHECK_THROWS_AS(CompositeLayout({{"A", 2}, {"A", 2}}), LayoutError);
  const CompositeLayout layout({{"P1", 2}, {"M1", 3}, {"P2", 2}});
  CHECK(layout.total_dim() == 12);
  CHECK(layout.position("P2") == 2);
  CHECK(layout.stride(0) == 6);
  CHECK(layout.dim_of({"P1", "P2"}) == 4);
  CHECK(layout.complement({"M1"}) == SubsystemSet{"P1", "P2"});
  CHECK_THROWS_AS(layout.position("X"), UnknownSubsystemError);
}

TEST_CASE("subsystem sets") {
  const SubsystemSet a{"P1", "M1"};
  CHECK(a.members() == std::vector<std::string>{"M1", "P1"});
  CHECK(SubsystemSet{"P1"}.is_subset_of(a));
  CHECK(a.intersects(SubsystemSet{"M1", "M2"}));
  CHECK_FALSE(a.intersects(SubsystemSet{"P2"}));
  CHECK_THROWS_AS((SubsystemSet{"A", "A"}), PreconditionError);
}

TEST_CASE("state vectors are validated") {
  CHECK_THROWS_AS(StateVector({1.0, 1.0}), PreconditionError);
  CHECK_NOTHROW(StateVector::normalized({1.0, 1.0}));
  CHECK_THROWS_AS(StateVector({std::nan(""), 0.0}), Error);
  CHECK_THROWS_AS(ComplexMatrix(2, 2, {1.0, 2.0, 3.0}), LayoutError);
}

TEST_CASE("eigendecomposition of a diagonal matrix") {
  const std::vector<Complex> d{0.3, 0.7};
  const auto e = eig_hermitian(ComplexMatrix::diagonal(d));
  CHECK(e.values[0] == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(e.values[1] == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(oracle::maxdiff(ora(e.vector(0)), oracle::down()) <= 1e-15);
  CHECK(oracle::maxdiff(ora(e.vector(1)), oracle::up()) <= 1e-15);
}

TEST_CASE("eigendecomposition reconstructs random Hermitian matrices") {
  gen::for_all(15, 30, [](gen::Gen& g, int i) {
    const std::size_t dim = 1 + static_cast<std::size_t>(i % 12);
    const auto h = g.hermitian(dim);
    const auto e = eig_hermitian(lib(h));
    oracle::Mat back(dim, dim);
    oracle::Mat gram(dim, dim);
    for (std::size_t k = 0; k < dim; ++k) {
      const auto v = ora(e.vector(k));
      const auto p = oracle::ketbra(v, v);
      for (std::size_t q = 0; q < dim * dim; ++q) back.a[q] += e.values[k] * p.a[q];
      for (std::size_t l = 0; l < dim; ++l) gram(k, l) = oracle::dot(v, ora(e.vector(l)));
      if (k > 0) CHECK(e.values[k - 1] >= e.values[k]);
    }
    CHECK(oracle::maxdiff(back, h) <= 1e-9);
    CHECK(oracle::maxdiff(gram, oracle::eye(dim)) <= 1e-9);
  });
}

TEST_CASE("eigenvector phase convention") {
  gen::for_all(16, 20, [](gen::Gen& g, int) {
    const auto e = eig_hermitian(lib(g.hermitian(5)));
    for (std::size_t k = 0; k < 5; ++k) {
      const auto v = e.vector(k);
      for (const auto& x : v) {
        if (std::abs(x) > 1e-8) {
          CHECK(std::abs(x.imag()) <= 1e-12);
          CHECK(x.real() > 0.0);
          break;
        }
      }
    }
  });
}

TEST_CASE("degenerate eigenvalues are grouped") {
  const auto e = eig_hermitian(ComplexMatrix::identity(2));
  REQUIRE(e.degenerate_blocks.size() == 1);
  CHECK(e.degenerate_blocks[0] == std::vector<std::size_t>{0, 1});
}

TEST_CASE("eigensolver on a 64-dimensional matrix") {
  gen::Gen g(17);
  const auto h = g.hermitian(64);
  const auto e = eig_hermitian(lib(h));
  oracle::Mat v = ora(e.vectors);
  oracle::Mat d(64, 64);
  for (std::size_t k = 0; k < 64; ++k) d(k, k) = e.values[k];
  CHECK(oracle::maxdiff(oracle::mul(oracle::mul(v, d), oracle::dagger(v)), h) <= 1e-9);
}

TEST_CASE("apply_unitary") {
  gen::for_all(18, 20, [](gen::Gen& g, int) {
    const auto psi = StateVector(g.state(4));
    CHECK(apply_unitary(ComplexMatrix::identity(4), psi) == psi);
    const auto u = g.unitary(4);
    const auto out = apply_unitary(lib(u), psi);
    CHECK(std::abs(norm(out.amplitudes()) - 1.0) <= 1e-12);
    CHECK(oracle::maxdiff(ora(out), oracle::apply(u, ora(psi))) <= 1e-14);
  });
  ComplexMatrix bad = ComplexMatrix::identity(2);
  bad(0, 1) = 0.5;
  CHECK_THROWS_AS(apply_unitary(bad, StateVector::basis(2, 0)), PreconditionError);
}

TEST_CASE("expm_hermitian") {
  gen::Gen g(19);
  const auto h = g.hermitian(4);
  CHECK(max_abs_diff(expm_hermitian(lib(h), 0.0), ComplexMatrix::identity(4)) <= 1e-12);

  const std::vector<Complex> sz{1.0, -1.0};
  CHECK(max_abs_diff(expm_hermitian(ComplexMatrix::diagonal(sz), std::numbers::pi),
                     -1.0 * ComplexMatrix::identity(2)) <= 1e-12);

  gen::for_all(20, 20, [](gen::Gen& g, int) {
    const auto h = lib(g.hermitian(5));
    const double t = g.uniform(-3.0, 3.0);
    CHECK(max_abs_diff(expm_hermitian(h, t) * expm_hermitian(h, -t), ComplexMatrix::identity(5)) <= 1e-9);
    CHECK(oracle::maxdiff(ora(expm_hermitian(h, t)), oracle::expm_taylor(ora(h), t)) <= 1e-9);
  });
}

TEST_CASE("embed_operator and apply_local agree with explicit Kronecker products") {
  gen::for_all(21, 20, [](gen::Gen& g, int) {
    const CompositeLayout layout({{"A", 2}, {"B", 3}, {"C", 2}});
    const auto u = g.unitary(2);
    const std::vector<std::string> t{"C"};
    const auto full = oracle::kron(oracle::eye(6), u);
    CHECK(oracle::maxdiff(ora(embed_operator(lib(u), layout, t)), full) <= 1e-15);
    const auto psi = g.state(12);
    CHECK(oracle::maxdiff(ora(apply_local(lib(u), layout, t, psi)), oracle::apply(full, psi)) <= 1e-14);

    // Two targets in reversed order: operator acts on C (first) then A.
    const auto w = g.unitary(4);
    const std::vector<std::string> ca{"C", "A"};
    const auto got = apply_local(lib(w), layout, ca, psi);
    oracle::cvec expect(12);
    for (std::size_t f = 0; f < 12; ++f) {
      const auto d = oracle::digits(f, {2, 3, 2});
      const std::size_t row = d[2] * 2 + d[0];
      for (std::size_t col = 0; col < 4; ++col) {
        const std::size_t c = col / 2;
        const std::size_t a = col % 2;
        expect[f] += w(row, col) * psi[oracle::flatten({a, d[1], c}, {2, 3, 2})];
      }
    }
    CHECK(oracle::maxdiff(ora(got), expect) <= 1e-14);
  });
}
