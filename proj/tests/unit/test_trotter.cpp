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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "msfermion/dense.hpp"
#include "msfermion/errors.hpp"
#include "msfermion/reference_counts.hpp"
#include "msfermion/trotter.hpp"
#include "oracle.hpp"

namespace msfermion {
namespace {

using testing::Dense;

AnsatzSpec h3plus_ansatz(double scale) {
  AnsatzSpec spec{6, {0, 1}, {2, 3, 4, 5}, {}};
  const std::size_t n = uccsd_excitations(spec).size();
  for (std::size_t k = 0; k < n; ++k) spec.theta.push_back(scale * (0.1 + 0.07 * k));
  return spec;
}

// Ordered product of exp(-i theta_k G_k) in excitation order.
Dense uccsd_oracle(const AnsatzSpec& spec) {
  const auto ex = uccsd_excitations(spec);
  Dense u = testing::identity(spec.n_modes);
  for (std::size_t k = 0; k < ex.size(); ++k) {
    u = testing::expm_hermitian(testing::term_dense(ex[k], spec.n_modes), spec.theta[k]) * u;
  }
  return u;
}

// Local part in one exponential (it commutes), then each block's terms.
Dense step_oracle(const HamiltonianTermList& h, const std::vector<ScheduledBlock>& schedule,
                  double dt) {
  const std::size_t n = h.n_modes;
  Dense local = h.constant * testing::identity(n);
  for (const auto& l : h.local) local += testing::local_dense(l, n);
  Dense u = testing::expm_hermitian(local, dt);
  for (const auto& b : schedule) {
    for (const auto& t : b.terms) u = testing::expm_hermitian(testing::term_dense(t, n), dt) * u;
  }
  return u;
}

TEST(Uccsd, SpinPreservingExcitations) {
  const auto ex = uccsd_excitations(h3plus_ansatz(1.0));
  EXPECT_EQ(ex.size(), 8u);
  for (const auto& t : ex) {
    std::size_t up = 0;
    for (std::size_t m : t.creation) up += spin_of(m);
    for (std::size_t m : t.annihilation) up -= spin_of(m);
    EXPECT_EQ(up, 0u) << t.str();
  }
}

TEST(Uccsd, H3plusCountsAndExactness) {
  const AnsatzSpec spec = h3plus_ansatz(1.0);
  const Circuit layer = build_uccsd_layer(spec);
  const Circuit base = build_uccsd_baseline(spec);
  EXPECT_EQ(count(layer).ms_total(), reference::kH3plusUccsdMs);
  EXPECT_EQ(count(base).ms_total(), reference::kH3plusUccsdBaselineMs);
  const Dense want = uccsd_oracle(spec);
  EXPECT_LT((circuit_unitary(layer) - want).norm(), 1e-9);
  EXPECT_LT((circuit_unitary(base) - want).norm(), 1e-9);
}

TEST(Uccsd, ZeroParametersGiveIdentity) {
  const Circuit layer = build_uccsd_layer(h3plus_ansatz(0.0));
  EXPECT_LT((circuit_unitary(layer) - testing::identity(6)).norm(), 1e-12);
}

TEST(Uccsd, RejectsWrongParameterCount) {
  AnsatzSpec spec = h3plus_ansatz(1.0);
  spec.theta.pop_back();
  EXPECT_THROW(build_uccsd_layer(spec), StructuralError);
}

TEST(Reference, PreparesBasisState) {
  const auto state = [](const Circuit& c) {
    const Dense u = circuit_unitary(c);
    Eigen::Index hot = -1;
    u.col(0).cwiseAbs().maxCoeff(&hot);
    return hot;
  };
  EXPECT_EQ(state(prepare_reference({0, 1}, 6)), 0b11);
  EXPECT_EQ(state(prepare_reference({}, 6)), 0);
  EXPECT_EQ(state(prepare_reference({5}, 6)), 0b100000);
  EXPECT_THROW(prepare_reference({6}, 6), StructuralError);
}

TEST(Schedule, H3plusBlocks) {
  const auto blocks = schedule_terms(h3plus_builtin().excitations);
  std::size_t partners = 0, shared = 0, terms = 0;
  for (const auto& b : blocks) {
    terms += b.terms.size();
    partners += b.kind == ScheduledBlock::Kind::permutation_partners ? 1 : 0;
    shared += b.kind == ScheduledBlock::Kind::shared_core ? 1 : 0;
    if (b.kind == ScheduledBlock::Kind::single_term) EXPECT_EQ(b.terms.size(), 1u);
  }
  EXPECT_EQ(terms, 14u);
  EXPECT_GT(partners, 0u);
  EXPECT_GT(shared, 0u);
}

TEST(TrotterStep, MatchesOrderedProductAllSchedulings) {
  const HamiltonianTermList h = h3plus_builtin();
  for (Scheduling s : {Scheduling::parallelized, Scheduling::string_by_string, Scheduling::naive}) {
    const TrotterStep step = build_trotter_step(h, {0.1, Reality::real, s});
    const Dense want = step_oracle(h, step.schedule, 0.1);
    EXPECT_LT((circuit_unitary(step.circuit) - want).norm(), 1e-9) << scheduling_name(s);
    for (std::size_t k = 0; k < step.local_gate_count; ++k) {
      const GateKind g = step.circuit.gates()[k].kind;
      EXPECT_TRUE(g == GateKind::rz || g == GateKind::rzz || g == GateKind::global_phase);
    }
  }
}

TEST(TrotterStep, H3plusCounts) {
  const HamiltonianTermList h = h3plus_builtin();
  const auto ms = [&](Scheduling s) {
    return count(build_trotter_step(h, {0.05, Reality::real, s}).circuit).ms_total();
  };
  EXPECT_EQ(ms(Scheduling::parallelized), reference::kH3plusTrotterMs);
  EXPECT_EQ(ms(Scheduling::string_by_string), reference::kH3plusTrotterStringMs);
  EXPECT_EQ(ms(Scheduling::naive), reference::kH3plusTrotterNaiveMs);
}

TEST(TrotterStep, RandomComplexTable) {
  std::mt19937_64 rng(7);
  const HamiltonianTermList h = term_list(testing::random_table(4, Reality::complex, rng));
  const TrotterStep step = build_trotter_step(h, {0.2, Reality::complex, Scheduling::parallelized});
  EXPECT_LT((circuit_unitary(step.circuit) - step_oracle(h, step.schedule, 0.2)).norm(), 1e-9);
}

TEST(TrotterStep, RejectsRealityMismatchAndBadDt) {
  const HamiltonianTermList h = h3plus_builtin();
  EXPECT_THROW(build_trotter_step(h, {0.1, Reality::complex, Scheduling::parallelized}),
               StructuralError);
  EXPECT_THROW(build_trotter_step(h, {std::nan(""), Reality::real, Scheduling::parallelized}),
               StructuralError);
}

TEST(ErrorProbe, ZeroStepHasZeroError) {
  const auto pts = trotter_error_probe(h3plus_builtin(), {0.0});
  ASSERT_EQ(pts.size(), 1u);
  EXPECT_LT(pts[0].second, 1e-12);
}

TEST(ErrorProbe, HalvingDtQuartersError) {
  const auto pts = trotter_error_probe(h3plus_builtin(), {0.1, 0.05});
  const double ratio = pts[0].second / pts[1].second;
  EXPECT_GE(ratio, 3.5);
  EXPECT_LE(ratio, 4.5);
  EXPECT_NEAR(fitted_log_slope(trotter_error_probe(h3plus_builtin(), {0.2, 0.1, 0.05, 0.025})),
              2.0, 0.1);
}

TEST(ErrorProbe, CommutingTermsAreExact) {
  HamiltonianTermList h = h3plus_builtin();
  h.excitations.clear();
  for (const auto& [dt, err] : trotter_error_probe(h, {0.3, 0.1})) EXPECT_LT(err, 1e-10) << dt;
}

TEST(ErrorProbe, SchedulingDoesNotChangeError) {
  const HamiltonianTermList h = h3plus_builtin();
  const auto a = trotter_error_probe(h, {0.1}, Scheduling::parallelized);
  const auto b = trotter_error_probe(h, {0.1}, Scheduling::naive);
  EXPECT_NEAR(a[0].second, b[0].second, 1e-9);
}

}  // namespace
}  // namespace msfermion
