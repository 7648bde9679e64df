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
#include <random>

#include "bridge.hpp"
#include "gen.hpp"
#include "oracles.hpp"
#include "qframes/dynamics.hpp"
#include "qframes/errors.hpp"
#include "qframes/frames.hpp"

using namespace qframes;
using bridge::lib;
using bridge::ora;

namespace {

// alpha|up>|m_up> + beta|down>|m_down> on (P, M), pointer m_up = |1>, m_down = |2>.
StateVector measured_spin(double alpha2) {
  oracle::cvec v(6);
  v[1] = std::sqrt(alpha2);
  v[3 + 2] = std::sqrt(1.0 - alpha2);
  return StateVector(v);
}

const CompositeLayout kPM({{"P", 2}, {"M", 3}});

}  // namespace

TEST_CASE("frame state of the device after a spin measurement") {
  const auto rho = frame_state(measured_spin(0.3), kPM, {"M"});
  ComplexMatrix expect(3, 3);
  expect(1, 1) = 0.3;
  expect(2, 2) = 0.7;
  CHECK(max_abs_diff(rho.matrix(), expect) <= 1e-15);
}

TEST_CASE("frame state of a product factor does not depend on the rest") {
  gen::for_all(31, 20, [](gen::Gen& g, int) {
    const auto phi = g.state(2);
    const auto chi = g.state(3);
    const auto rho = frame_state(StateVector(oracle::kron(phi, chi)), kPM, {"P"});
    CHECK(oracle::maxdiff(ora(rho.matrix()), oracle::ketbra(phi, phi)) <= 1e-15);
  });
}

TEST_CASE("frame state of P2 in the two-particle state") {
  gen::for_all(32, 20, [](gen::Gen& g, int) {
    const auto ab = g.state(2);
    // a|up,down> - b|down,up>
    oracle::cvec psi(4);
    psi[1] = ab[0];
    psi[2] = -ab[1];
    const CompositeLayout layout({{"P1", 2}, {"P2", 2}});
    const auto rho = frame_state(StateVector(psi), layout, {"P2"});
    const auto expect = oracle::partial_trace(oracle::ketbra(psi, psi), {2, 2}, {false, true});
    CHECK(oracle::maxdiff(ora(rho.matrix()), expect) <= 1e-15);
    // In (|2,down>, |2,up>) order: diag(|a|^2, |b|^2).
    CHECK(std::abs(rho.matrix()(1, 1) - std::norm(ab[0])) <= 1e-15);
    CHECK(std::abs(rho.matrix()(0, 0) - std::norm(ab[1])) <= 1e-15);
  });
}

TEST_CASE("frame state of the whole reference system is its projector") {
  gen::Gen g(33);
  const auto psi = StateVector(g.state(6));
  CHECK(max_abs_diff(frame_state(psi, kPM, {"P", "M"}).matrix(), psi.projector()) == 0.0);
}

TEST_CASE("frame state requires containment") {
  CHECK_THROWS_AS(frame_state(measured_spin(0.5), kPM, {"Q"}), ContainmentError);
  CHECK_THROWS_AS(frame_state(measured_spin(0.5), kPM, {"P", "Q"}), ContainmentError);
}

TEST_CASE("possible internal states of the measured device") {
  const auto ens = possible_internal_states(frame_state(measured_spin(0.3), kPM, {"M"}));
  REQUIRE(ens.size() == 2);
  CHECK(ens[0].probability == doctest::Approx(0.7).epsilon(1e-14));
  CHECK(ens[1].probability == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(oracle::fidelity(ora(ens[0].state), oracle::basis(3, 2)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(oracle::fidelity(ora(ens[1].state), oracle::basis(3, 1)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_FALSE(ens.has_degeneracy());
  CHECK(ens.labels() == std::vector<std::string>{"j0", "j1"});
}

TEST_CASE("possible internal states of a pure frame state") {
  gen::Gen g(34);
  const auto v = g.state(3);
  const DensityOperator rho(CompositeLayout({{"A", 3}}), lib(oracle::ketbra(v, v)));
  const auto ens = possible_internal_states(rho);
  REQUIRE(ens.size() == 1);
  CHECK(ens[0].probability == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(oracle::fidelity(ora(ens[0].state), v) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("maximally mixed qubit is a degenerate block") {
  const DensityOperator rho(CompositeLayout({{"A", 2}}), 0.5 * ComplexMatrix::identity(2));
  const auto ens = possible_internal_states(rho);
  REQUIRE(ens.size() == 2);
  CHECK(ens[0].probability == doctest::Approx(0.5));
  CHECK(ens[1].probability == doctest::Approx(0.5));
  CHECK(ens.has_degeneracy());
  CHECK(ens.in_degenerate_block(0));
  CHECK(ens.in_degenerate_block(1));
}

TEST_CASE("density operator validation") {
  const CompositeLayout a({{"A", 2}});
  ComplexMatrix m = ComplexMatrix::identity(2);
  CHECK_THROWS_AS(DensityOperator(a, m), NormalizationError);
  m(0, 1) = 0.1;
  CHECK_THROWS_AS(DensityOperator(a, 0.5 * m), PreconditionError);
  const std::vector<Complex> neg{1.5, -0.5};
  CHECK_THROWS_AS(DensityOperator(a, ComplexMatrix::diagonal(neg)), PreconditionError);
}

TEST_CASE("ensemble probabilities sum to one and states are orthonormal") {
  gen::for_all(35, 30, [](gen::Gen& g, int) {
    const auto rho = g.density(4);
    const auto ens = possible_internal_states(DensityOperator(CompositeLayout({{"A", 4}}), lib(rho)));
    double total = 0.0;
    for (std::size_t i = 0; i < ens.size(); ++i) {
      total += ens[i].probability;
      for (std::size_t j = 0; j < ens.size(); ++j) {
        const double o = std::abs(inner(ens[i].state, ens[j].state));
        CHECK(std::abs(o - (i == j ? 1.0 : 0.0)) <= 1e-9);
      }
      // Each member is an eigenvector: rho v = p v.
      const auto rv = oracle::apply(rho, ora(ens[i].state));
      for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(rv[k] - ens[i].probability * ens[i].state[k]) <= 1e-9);
    }
    CHECK(std::abs(total - 1.0) <= 1e-10);
  });
}

TEST_CASE("resolve_in_basis keeps zero-weight members") {
  const DensityOperator rho(CompositeLayout({{"A", 2}}), StateVector::basis(2, 1).projector());
  const auto ens = resolve_in_basis(rho, {StateVector::basis(2, 0), StateVector::basis(2, 1)}, {"up", "down"});
  REQUIRE(ens.size() == 2);
  CHECK(ens[0].probability == 0.0);
  CHECK(ens[1].probability == doctest::Approx(1.0));
  CHECK(ens.source() == BasisSource::kSupplied);
  const auto plus = StateVector::normalized({1.0, 1.0});
  const auto minus = StateVector::normalized({1.0, -1.0});
  CHECK_THROWS_AS(resolve_in_basis(rho, {plus, minus}, {"+", "-"}), PreconditionError);
}

TEST_CASE("sampling internal states") {
  const auto ens = possible_internal_states(frame_state(measured_spin(0.3), kPM, {"M"}));
  std::mt19937_64 rng(20260101);
  std::size_t up = 0;
  const std::size_t draws = 100000;
  std::vector<std::size_t> seq;
  for (std::size_t i = 0; i < draws; ++i) {
    const auto s = sample_internal_state(ens, rng);
    seq.push_back(s.index);
    if (oracle::fidelity(ora(s.state), oracle::basis(3, 1)) > 0.5) ++up;
  }
  CHECK(std::abs(static_cast<double>(up) / draws - 0.3) <= 0.01);

  std::mt19937_64 again(20260101);
  for (std::size_t i = 0; i < 1000; ++i) CHECK(sample_internal_state(ens, again).index == seq[i]);

  const DensityOperator pure(CompositeLayout({{"A", 2}}), StateVector::basis(2, 1).projector());
  const auto one = possible_internal_states(pure);
  for (int i = 0; i < 100; ++i) CHECK(sample_internal_state(one, rng).index == 0);
}

TEST_CASE("sampling flags draws from a degenerate block") {
  const DensityOperator rho(CompositeLayout({{"A", 2}}), 0.5 * ComplexMatrix::identity(2));
  const auto ens = possible_internal_states(rho);
  std::mt19937_64 rng(7);
  CHECK(sample_internal_state(ens, rng).non_unique);
}

TEST_CASE("readout") {
  const auto pm = PointerMap::standard("M", {"up", "down"});
  CHECK(readout(StateVector::basis(3, 1), pm) == "up");
  CHECK(readout(StateVector::basis(3, 2), pm) == "down");
  CHECK(readout(StateVector::basis(3, 0), pm) == "ready");
  CHECK(readout(StateVector::normalized({0.0, 1.0, 1.0}), pm) == "unresolved");
  CHECK(readout(StateVector::basis(3, 2).with_phase(1.3), pm) == "down");
  CHECK_THROWS_AS(PointerMap::standard("M", {"ready"}), PreconditionError);
}

TEST_CASE("comparability") {
  const CompositeLayout layout({{"P1", 2}, {"M1", 3}, {"P2", 2}, {"M2", 3}});
  CHECK(comparable(layout, {"P1"}, {"P1", "P2"}));
  CHECK(comparable(layout, {"P1", "P2"}, {"P1"}));
  CHECK_FALSE(comparable(layout, {"P1", "M1"}, {"M1", "M2"}));
  CHECK(comparable(layout, {"P1"}, {"P2"}));
}
