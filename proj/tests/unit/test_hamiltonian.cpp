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

#include <random>
#include <string>

#include <gtest/gtest.h>

#include "msfermion/errors.hpp"
#include "msfermion/hamiltonian.hpp"
#include "oracle.hpp"

namespace msfermion {
namespace {

using testing::Dense;

TEST(ParseIntegrals, MinimalRealClosesSymmetry) {
  const auto t = parse_integrals("norb 2 reality real\n0.25 1 2 0 0\n");
  EXPECT_EQ(t.n_modes(), 2u);
  EXPECT_EQ(t.one_body(1, 0), std::complex<double>(0.25));
  EXPECT_EQ(t.one_body(0, 1), std::complex<double>(0.25));
}

TEST(ParseIntegrals, ComplexConjugatesOnLookup) {
  const auto t = parse_integrals(
      "# comment\nnorb 4 reality complex\n0.1 0.2 1 2 0 0\n0.3 -0.4 1 2 3 4  # tail\n-1.5 0 0 0 0\n");
  EXPECT_EQ(t.one_body(1, 0), std::complex<double>(0.1, -0.2));
  EXPECT_EQ(t.two_body(0, 1, 2, 3), std::complex<double>(0.3, -0.4));
  EXPECT_EQ(t.two_body(1, 0, 3, 2), std::complex<double>(0.3, -0.4));
  EXPECT_EQ(t.two_body(2, 3, 0, 1), std::complex<double>(0.3, 0.4));
  EXPECT_EQ(t.two_body(3, 2, 1, 0), std::complex<double>(0.3, 0.4));
  // The extra real-orbital partners are independent for complex tables.
  EXPECT_EQ(t.two_body(2, 1, 0, 3), std::complex<double>(0.0));
  EXPECT_DOUBLE_EQ(t.constant(), -1.5);
  EXPECT_EQ(t.two_body_entries().size(), 1u);
}

TEST(ParseIntegrals, RealTableHasEightFoldOrbit) {
  const auto t = parse_integrals("norb 4 reality real\n0.7 1 2 3 4\n");
  for (const auto& k : std::vector<std::array<std::size_t, 4>>{
           {0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0},
           {2, 1, 0, 3}, {3, 0, 1, 2}, {0, 3, 2, 1}, {1, 2, 3, 0}}) {
    EXPECT_EQ(t.two_body(k[0], k[1], k[2], k[3]), std::complex<double>(0.7));
  }
  EXPECT_EQ(t.two_body(0, 1, 3, 2), std::complex<double>(0.0));
}

TEST(ParseIntegrals, RejectsImaginaryPartInRealTable) {
  try {
    parse_integrals("norb 2 reality real\n0.1 0.5 1 2 0 0\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(ParseIntegrals, SymmetryConflictNamesBothTuples) {
  try {
    parse_integrals("norb 4 reality real\n0.5 1 2 3 4\n0.6 2 1 4 3\n");
    FAIL() << "expected SymmetryError";
  } catch (const SymmetryError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
    EXPECT_NE(msg.find("(1,0,3,2)"), std::string::npos) << msg;
    EXPECT_NE(msg.find("(0,1,2,3)"), std::string::npos) << msg;
  }
  // Agreeing duplicates are accepted.
  EXPECT_NO_THROW(parse_integrals("norb 4 reality real\n0.5 1 2 3 4\n0.5 2 1 4 3\n"));
}

TEST(ParseIntegrals, MalformedLinesReportLineNumber) {
  const std::vector<std::pair<std::string, std::size_t>> bad{
      {"norb 2 reality imaginary\n", 1},
      {"0.1 1 1 0 0\n", 1},
      {"norb 2 reality real\n0.1 1 1 0\n", 2},
      {"norb 2 reality real\n\n0.1 1 3 0 0\n", 3},
      {"norb 2 reality real\nx 1 1 0 0\n", 2},
      {"norb 2 reality real\n0.1 0 1 0 0\n", 2},
      {"norb 2 reality real\n0.1 1 0 1 1\n", 2},
      {"norb 2 reality complex\n0.1 0.1 1 1 0 0\n", 2},
  };
  for (const auto& [doc, line] : bad) {
    try {
      parse_integrals(doc);
      ADD_FAILURE() << "accepted: " << doc;
    } catch (const ParseError& e) {
      EXPECT_EQ(e.line(), line) << doc << " -> " << e.what();
    } catch (const SymmetryError& e) {
      EXPECT_NE(std::string(e.what()).find("line " + std::to_string(line)), std::string::npos)
          << e.what();
    }
  }
  EXPECT_THROW(parse_integrals(""), ParseError);
}

TEST(TermList, ZeroTableIsEmpty) {
  EXPECT_TRUE(term_list(IntegralTable(3, Reality::real)).empty());
}

TEST(TermList, RandomRealReconstruction) {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 5; ++trial) {
    const IntegralTable t = testing::random_table(4, Reality::real, rng);
    const HamiltonianTermList h = term_list(t);
    for (const auto& e : h.excitations) EXPECT_TRUE(e.symmetrized) << e.str();
    const Dense want = testing::table_dense(t);
    EXPECT_LT((testing::termlist_dense(h) - want).norm(), 1e-12);
    EXPECT_LT((testing::pauli_sum_dense(h.pauli()) - want).norm(), 1e-12);
  }
}

TEST(TermList, RandomComplexReconstructionHasBothFamilies) {
  std::mt19937_64 rng(202);
  for (int trial = 0; trial < 5; ++trial) {
    const IntegralTable t = testing::random_table(4, Reality::complex, rng);
    const HamiltonianTermList h = term_list(t);
    bool g = false, gt = false;
    for (const auto& e : h.excitations) (e.symmetrized ? gt : g) = true;
    EXPECT_TRUE(g && gt);
    const Dense want = testing::table_dense(t);
    EXPECT_LT((testing::termlist_dense(h) - want).norm(), 1e-12);
    EXPECT_LT((testing::pauli_sum_dense(h.pauli()) - want).norm(), 1e-12);
  }
}

TEST(TermList, SixModeReconstruction) {
  std::mt19937_64 rng(303);
  const IntegralTable t = testing::random_table(6, Reality::complex, rng);
  EXPECT_LT((testing::termlist_dense(term_list(t)) - testing::table_dense(t)).norm(), 1e-12);
}

double coefficient_of(const HamiltonianTermList& h, const ExcitationTerm& probe) {
  for (const auto& t : h.excitations) {
    if (t.creation == probe.creation && t.annihilation == probe.annihilation &&
        t.control == probe.control && t.kind == probe.kind && t.symmetrized == probe.symmetrized) {
      return t.coefficient / probe.coefficient;
    }
  }
  return 0.0;
}

TEST(H3plus, ListedCoefficients) {
  const HamiltonianTermList h = h3plus_builtin();
  EXPECT_EQ(h.n_modes, 6u);
  EXPECT_EQ(h.excitations.size(), 14u);
  // alpha0 beta0 -> alpha1 beta1
  EXPECT_DOUBLE_EQ(coefficient_of(h, ExcitationTerm::from_ladder({0, 1}, {2, 3}, true)), -0.142);
  EXPECT_DOUBLE_EQ(coefficient_of(h, ExcitationTerm::from_ladder({2, 3}, {4, 5}, true)), -0.072);
  EXPECT_DOUBLE_EQ(coefficient_of(h, ExcitationTerm::from_ladder({0, 3}, {2, 3}, true)), -0.090);
  EXPECT_DOUBLE_EQ(coefficient_of(h, ExcitationTerm::from_ladder({0, 5}, {2, 5}, true)), 0.090);
  bool found = false;
  for (const auto& l : h.local) {
    if (l.kind == LocalTerm::Kind::density && l.p == 0) {
      EXPECT_DOUBLE_EQ(l.coefficient, -0.917);
      found = true;
    }
  }
  EXPECT_TRUE(found);
  std::size_t densities = 0, coulomb = 0;
  for (const auto& l : h.local) (l.kind == LocalTerm::Kind::density ? densities : coulomb) += 1;
  EXPECT_EQ(densities, 6u);
  EXPECT_EQ(coulomb, 15u);
}

TEST(H3plus, ShippedFileReproducesBuiltin) {
  const HamiltonianTermList want = h3plus_builtin();
  const HamiltonianTermList got =
      term_list(load_integrals(std::string(MSFERMION_DATA_DIR) + "/h3plus.integrals"));
  ASSERT_EQ(got.local.size(), want.local.size());
  ASSERT_EQ(got.excitations.size(), want.excitations.size());
  for (std::size_t k = 0; k < want.local.size(); ++k) {
    EXPECT_EQ(got.local[k].kind, want.local[k].kind);
    EXPECT_EQ(got.local[k].p, want.local[k].p);
    EXPECT_EQ(got.local[k].q, want.local[k].q);
    EXPECT_NEAR(got.local[k].coefficient, want.local[k].coefficient, 1e-12);
  }
  for (std::size_t k = 0; k < want.excitations.size(); ++k) {
    EXPECT_EQ(got.excitations[k].with_coefficient(0), want.excitations[k].with_coefficient(0));
    EXPECT_NEAR(got.excitations[k].coefficient, want.excitations[k].coefficient, 1e-12);
  }
  EXPECT_LT((testing::termlist_dense(got) - testing::termlist_dense(want)).norm(), 1e-12);
}

}  // namespace
}  // namespace msfermion
