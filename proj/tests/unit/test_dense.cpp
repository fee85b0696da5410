// Copyright 2026 The msfermion Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "msfermion/dense.hpp"
#include "msfermion/errors.hpp"
#include "oracle.hpp"

namespace msfermion {
namespace {

using testing::Dense;
using testing::pauli_dense;
constexpr double kPi = std::numbers::pi;

Circuit every_gate_kind(std::size_t n) {
  Circuit c(n);
  c.append(Gate::ms(MsAxis::xx, MsDirection::forward, {0, 2}));
  c.append(Gate::ms(MsAxis::yy, MsDirection::backward, {0, 1, 2}));
  c.append(Gate::rz(1, 0.37));
  c.append(Gate::crz(2, 0, -1.1));
  c.append(Gate::rzz(0, 1, 0.6));
  for (Clifford1 g : {Clifford1::h, Clifford1::s, Clifford1::sdg, Clifford1::sx, Clifford1::sxdg,
                      Clifford1::x, Clifford1::y, Clifford1::z}) {
    c.append(Gate::single(g, 1));
  }
  c.append(Gate::cnot(1, 2));
  c.append(Gate::global_phase(0.2));
  return c;
}

TEST(CircuitUnitary, EmptyIsIdentity) {
  EXPECT_LT((circuit_unitary(Circuit(3)) - testing::identity(3)).norm(), 1e-15);
}

TEST(CircuitUnitary, XxOnTwoQubits) {
  Circuit c(2);
  c.append(Gate::ms(MsAxis::xx, MsDirection::forward, {0, 1}));
  const Dense want = testing::expm_hermitian(pauli_dense(PauliString::parse("X0 X1", 2)), kPi / 4);
  EXPECT_LT((circuit_unitary(c) - want).norm(), 1e-12);
}

TEST(CircuitUnitary, RzPiIsDiagonal) {
  Circuit c(1);
  c.append(Gate::rz(0, kPi));
  const Dense u = circuit_unitary(c);
  EXPECT_LT(std::abs(u(0, 0) - std::polar(1.0, -kPi / 2)), 1e-15);
  EXPECT_LT(std::abs(u(1, 1) - std::polar(1.0, kPi / 2)), 1e-15);
  EXPECT_LT(std::abs(u(0, 1)) + std::abs(u(1, 0)), 1e-15);
}

TEST(CircuitUnitary, GateDefinitionsMatchOracle) {
  const std::size_t n = 3;
  auto single = [&](const Gate& g) {
    Circuit c(n);
    c.append(g);
    return circuit_unitary(c);
  };
  const Dense z0 = pauli_dense(PauliString::parse("Z0", n));
  const Dense z1 = pauli_dense(PauliString::parse("Z1", n));
  const Dense z0z1 = pauli_dense(PauliString::parse("Z0 Z1", n));
  EXPECT_LT((single(Gate::rzz(0, 1, 0.8)) - testing::expm_hermitian(z0z1, 0.4)).norm(), 1e-12);
  // CRz = |0><0| + |1><1| Rz on the target: exp(-i a/4 (Z_t - Z_c Z_t)).
  const Dense crz_gen = 0.5 * (z1 - z0z1);
  EXPECT_LT((single(Gate::crz(0, 1, 0.9)) - testing::expm_hermitian(crz_gen, 0.45)).norm(), 1e-12);
  // YY with three targets.
  Dense h = Dense::Zero(8, 8);
  for (const char* p : {"Y0 Y1", "Y0 Y2", "Y1 Y2"}) h += pauli_dense(PauliString::parse(p, n));
  EXPECT_LT((single(Gate::ms(MsAxis::yy, MsDirection::forward, {0, 1, 2})) -
             testing::expm_hermitian(h, kPi / 4))
                .norm(),
            1e-12);
  const Dense gp = single(Gate::global_phase(0.3));
  EXPECT_LT((gp - std::polar(1.0, 0.3) * testing::identity(n)).norm(), 1e-12);
}

TEST(CircuitUnitary, CollectiveConventionAddsPhase) {
  for (std::size_t n = 1; n <= 5; ++n) {
    Circuit c(n);
    std::vector<std::size_t> qs;
    for (std::size_t k = 0; k < n; ++k) qs.push_back(k);
    c.append(Gate::ms(MsAxis::xx, MsDirection::forward, qs));
    const Dense t = circuit_unitary(c, MsConvention::targeted);
    const Dense col = circuit_unitary(c, MsConvention::collective);
    const auto phase = std::polar(1.0, -kPi * static_cast<double>(n) / 8.0);
    EXPECT_LT((col - phase * t).norm(), 1e-12) << n;
  }
}

TEST(CircuitUnitary, ConcatenationIsOrderedProduct) {
  const Circuit a = every_gate_kind(3);
  Circuit b(3);
  b.append(Gate::single(Clifford1::h, 0));
  b.append(Gate::ms(MsAxis::xx, MsDirection::forward, {1, 2}));
  Circuit ab(3);
  ab.append(a);
  ab.append(b);
  const Dense want = circuit_unitary(b) * circuit_unitary(a);
  EXPECT_LT((circuit_unitary(ab) - want).norm(), 1e-12);
}

TEST(CircuitUnitary, AllGatesUnitaryAndInverseUndoes) {
  const Circuit c = every_gate_kind(3);
  for (const Gate& g : c.gates()) {
    Circuit one(3);
    one.append(g);
    EXPECT_LT(unitarity_defect(circuit_unitary(one)), 1e-12) << g.name();
  }
  Circuit round(3);
  round.append(c);
  round.append(c.inverse());
  EXPECT_LT((circuit_unitary(round) - testing::identity(3)).norm(), 1e-12);
}

TEST(CircuitUnitary, DimensionCap) {
  EXPECT_THROW(circuit_unitary(Circuit(kMaxDenseQubits + 1)), DimensionError);
}

TEST(GeneratorUnitary, AngleZeroIsIdentity) {
  const auto g = PauliSum::from_string(PauliString::parse("X0 Y1", 2));
  EXPECT_LT((generator_unitary(g, 0.0) - testing::identity(2)).norm(), 1e-14);
}

TEST(GeneratorUnitary, ZMatchesRz) {
  const double phi = 0.731;
  Circuit c(1);
  c.append(Gate::rz(0, 2 * phi));
  const auto g = PauliSum::from_string(PauliString::parse("Z0", 1));
  EXPECT_LT((generator_unitary(g, phi) - circuit_unitary(c)).norm(), 1e-14);
}

TEST(GeneratorUnitary, SingleExcitationSpectrum) {
  const auto g = generator_pauli(ExcitationTerm::single(0, 1), 2);
  const Dense m = testing::pauli_sum_dense(g);
  Eigen::SelfAdjointEigenSolver<Dense> es(m);
  EXPECT_NEAR(es.eigenvalues()(0), -1.0, 1e-12);
  EXPECT_NEAR(es.eigenvalues()(1), 0.0, 1e-12);
  EXPECT_NEAR(es.eigenvalues()(2), 0.0, 1e-12);
  EXPECT_NEAR(es.eigenvalues()(3), 1.0, 1e-12);
  // At pi/2 the occupied-subspace rotation swaps |01> and |10> up to sign.
  const Dense u = generator_unitary(g, kPi / 2);
  EXPECT_NEAR(std::abs(u(1, 2)), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(u(2, 1)), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(u(0, 0)), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(u(3, 3)), 1.0, 1e-12);
}

TEST(GeneratorUnitary, AnglesAdd) {
  const auto g = generator_pauli(ExcitationTerm::double_excitation(0, 1, 2, 3), 4);
  const Dense ab = generator_unitary(g, 0.3) * generator_unitary(g, 0.45);
  EXPECT_LT((ab - generator_unitary(g, 0.75)).norm(), 1e-11);
}

TEST(GeneratorUnitary, MatchesOracleExponential) {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> nd;
  PauliSum s(3);
  for (const char* p : {"X0", "Y0 Z1 X2", "Z0 Z2", "X1 Y2", "Y1"}) {
    s.add(PauliString::parse(p, 3), nd(rng));
  }
  const Dense want = testing::expm_hermitian(testing::pauli_sum_dense(s), 0.9);
  EXPECT_LT((generator_unitary(s, 0.9) - want).norm(), 1e-12);
}

TEST(GeneratorUnitary, RejectsNonHermitian) {
  PauliSum s(1);
  s.add(PauliString::parse("X0", 1), {0.0, 1.0});
  EXPECT_THROW(generator_unitary(s, 0.1), NonHermitianError);
}

TEST(AssertEquivalent, ExactAndPhaseModes) {
  const Dense u = circuit_unitary(every_gate_kind(3));
  const auto same = assert_equivalent(u, u, EquivalenceMode::exact, 1e-12);
  EXPECT_TRUE(same.pass);
  EXPECT_EQ(same.distance, 0.0);
  const Dense v = std::polar(1.0, kPi / 7) * u;
  EXPECT_FALSE(assert_equivalent(v, u, EquivalenceMode::exact, 1e-9).pass);
  const auto ph = assert_equivalent(v, u, EquivalenceMode::global_phase, 1e-9);
  EXPECT_TRUE(ph.pass);
  EXPECT_LT(std::abs(ph.phase - std::polar(1.0, kPi / 7)), 1e-12);
  EXPECT_THROW(assert_equivalent(u, testing::identity(2), EquivalenceMode::exact, 1e-9),
               DimensionError);
}

TEST(SpectralNorm, OfPauliIsOne) {
  EXPECT_NEAR(spectral_norm(pauli_dense(PauliString::parse("X0 Y1", 2))), 1.0, 1e-12);
}

}  // namespace
}  // namespace msfermion
