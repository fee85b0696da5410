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
#include <vector>

#include <gtest/gtest.h>

#include "msfermion/errors.hpp"
#include "msfermion/fermion.hpp"
#include "oracle.hpp"

namespace msfermion {
namespace {

using testing::Dense;

TEST(FermionOperator, AnticommutatorIsKronecker) {
  const std::size_t n = 3;
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      FermionOperator ac = FermionOperator::product(n, {ann(p), cre(q)}) +
                           FermionOperator::product(n, {cre(q), ann(p)});
      FermionOperator want(n);
      if (p == q) want.add({}, 1.0);
      EXPECT_EQ(ac.products(), want.products()) << p << "," << q;
    }
  }
}

TEST(FermionOperator, NormalOrderingPreservesMatrix) {
  const std::size_t n = 4;
  const FermionOperator op = FermionOperator::product(n, {ann(2), cre(0), ann(1), cre(2)}, 0.7);
  const Dense want = 0.7 * testing::annihilator(n, 2) * testing::creator(n, 0) *
                     testing::annihilator(n, 1) * testing::creator(n, 2);
  EXPECT_LT((testing::pauli_sum_dense(jw_map(op)) - want).norm(), 1e-12);
}

TEST(JordanWigner, LadderImagesMatchOracle) {
  const std::size_t n = 4;
  for (std::size_t p = 0; p < n; ++p) {
    const Dense a = testing::pauli_sum_dense(jw_map(FermionOperator::product(n, {ann(p)})));
    const Dense c = testing::pauli_sum_dense(jw_map(FermionOperator::product(n, {cre(p)})));
    EXPECT_LT((a - testing::annihilator(n, p)).norm(), 1e-12);
    EXPECT_LT((c - testing::creator(n, p)).norm(), 1e-12);
  }
}

TEST(JordanWigner, NumberOperatorIsHalfOneMinusZ) {
  const auto s = jw_map(FermionOperator::number(3, 1));
  EXPECT_NEAR(s.coefficient(PauliString(3)).real(), 0.5, 1e-15);
  EXPECT_NEAR(s.coefficient(PauliString::parse("Z1", 3)).real(), -0.5, 1e-15);
  EXPECT_EQ(s.size(), 2u);
}

struct Case {
  ExcitationTerm term;
  std::size_t strings;
};

TEST(Generators, PauliImagesMatchOracle) {
  const std::size_t n = 6;
  const std::vector<Case> cases{
      {ExcitationTerm::single(0, 3), 2},
      {ExcitationTerm::single(1, 5, true), 2},
      {ExcitationTerm::double_excitation(0, 1, 3, 4), 8},
      {ExcitationTerm::double_excitation(0, 2, 3, 5, true), 8},
      {ExcitationTerm::controlled_single(0, 2, 4), 4},
      {ExcitationTerm::controlled_single(1, 4, 2, true), 4},
      {ExcitationTerm::higher({0, 1, 2}, {3, 4, 5}), 32},
  };
  for (const auto& [t, strings] : cases) {
    const PauliSum g = generator_pauli(t, n);
    EXPECT_TRUE(g.is_hermitian()) << t.str();
    EXPECT_EQ(g.size(), strings) << t.str();
    EXPECT_LT((testing::pauli_sum_dense(g) - testing::term_dense(t, n)).norm(), 1e-12) << t.str();
  }
}

TEST(Generators, HigherOrderHasOddXYStrings) {
  const auto g = generator_pauli(ExcitationTerm::higher({0, 1, 2}, {3, 4, 5}), 6);
  EXPECT_EQ(g.size(), 32u);
  for (const auto& t : g.terms()) {
    std::size_t y = 0;
    for (std::size_t k = 0; k < 6; ++k) y += t.string.letter(k) == Pauli::Y ? 1 : 0;
    EXPECT_EQ(y % 2, 1u) << t.string.str();
  }
}

TEST(Generators, ControlledSingleIsMinusNumberTimesSingle) {
  const std::size_t n = 5;
  for (std::size_t j : {0u, 2u, 4u}) {
    const auto t = ExcitationTerm::controlled_single(1, 3, j);
    const Dense want = -1.0 * testing::number(n, j) * testing::generator(n, {1}, {3}, false);
    EXPECT_LT((testing::pauli_sum_dense(generator_pauli(t, n)) - want).norm(), 1e-12) << j;
  }
}

TEST(Generators, CoulombAndDensitySymmetrized) {
  const std::size_t n = 3;
  const Dense gpp = testing::generator(n, {1}, {1}, true);
  EXPECT_LT((gpp - 2.0 * testing::number(n, 1)).norm(), 1e-12);
  const Dense gpq = testing::generator(n, {0, 2}, {0, 2}, true);
  const Dense nn = testing::number(n, 0) * testing::number(n, 2);
  EXPECT_LT((gpq + 2.0 * nn).norm(), 1e-12);
}

TEST(FromLadder, CanonicalizesWithSigns) {
  const std::size_t n = 5;
  const std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> lists{
      {{3}, {1}}, {{1, 0}, {3, 2}}, {{4, 1}, {0, 3}}, {{0, 3}, {2, 3}}, {{3, 2}, {3, 0}},
      {{2, 4}, {0, 1}}};
  for (bool sym : {false, true}) {
    for (const auto& [c, a] : lists) {
      const auto t = ExcitationTerm::from_ladder(c, a, sym, 0.3);
      const Dense want = 0.3 * testing::generator(n, c, a, sym);
      EXPECT_LT((testing::term_dense(t, n) - want).norm(), 1e-12) << t.str();
      EXPECT_LT(t.creation.front(), t.annihilation.front());
    }
  }
  EXPECT_THROW(ExcitationTerm::from_ladder({1, 2}, {1, 2}, true), StructuralError);
  EXPECT_THROW(ExcitationTerm::single(2, 1), StructuralError);
  EXPECT_THROW(ExcitationTerm::controlled_single(0, 2, 2), StructuralError);
}

// exp(-i pi/2 n_j) G exp(+i pi/2 n_j) against the library's claimed image.
TEST(LocalEquivalence, PhaseGateMapsGToGTilde) {
  const std::size_t n = 5;
  const std::vector<ExcitationTerm> terms{
      ExcitationTerm::single(0, 3), ExcitationTerm::double_excitation(0, 1, 2, 4),
      ExcitationTerm::from_ladder({0, 3}, {1, 4}, false), ExcitationTerm::controlled_single(1, 3, 4)};
  for (const auto& t : terms) {
    for (std::size_t j = 0; j < n; ++j) {
      const Dense u = testing::expm_hermitian(testing::number(n, j), std::numbers::pi / 2);
      const Dense lhs = u * testing::term_dense(t, n) * u.adjoint();
      const auto [image, sign] = local_equivalence_conjugate(t, j);
      const Dense rhs = static_cast<double>(sign) * testing::term_dense(image, n);
      EXPECT_LT((lhs - rhs).norm(), 1e-12) << t.str() << " j=" << j;
    }
  }
  EXPECT_THROW(local_equivalence_conjugate(ExcitationTerm::single(0, 1, true), 0), StructuralError);
}

}  // namespace
}  // namespace msfermion
