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

#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "msfermion/circuit.hpp"
#include "msfermion/fermion.hpp"
#include "msfermion/hamiltonian.hpp"

namespace msfermion {

/// Spin of a mode under the alternating convention (even = alpha, odd = beta).
inline std::size_t spin_of(std::size_t mode) { return mode % 2; }

struct AnsatzSpec {
  std::size_t n_modes = 0;
  std::vector<std::size_t> occupied;
  std::vector<std::size_t> virt;
  /// One angle per excitation of uccsd_excitations, same order.
  std::vector<double> theta;
};

/// Spin-preserving excitations from occupied to virtual modes: singles
/// (p, q) ordered by (p, q), then doubles G_pq^rs with p < q occupied and
/// r < s virtual ordered by (p, q, r, s). Each term has unit weight in that
/// operator order; canonicalization signs sit in the coefficient.
std::vector<ExcitationTerm> uccsd_excitations(const AnsatzSpec& spec);

/// prod_k exp(-i theta_k G_k), first excitation first in time.
Circuit build_uccsd_layer(const AnsatzSpec& spec);
/// Same product lowered one Pauli string (one MS pair) at a time.
Circuit build_uccsd_baseline(const AnsatzSpec& spec);

/// X on every occupied qubit.
Circuit prepare_reference(const std::vector<std::size_t>& occupied, std::size_t n_modes);

enum class Scheduling : std::uint8_t {
  /// Shared MS blocks for permutation partners and shared-core controlled singles.
  parallelized,
  /// One MS pair per Pauli string of each block, symmetries still applied.
  string_by_string,
  /// One MS pair per Pauli string of each individual term.
  naive,
};

const char* scheduling_name(Scheduling s);

struct TrotterConfig {
  double dt = 0.0;
  Reality reality = Reality::real;
  Scheduling scheduling = Scheduling::parallelized;
};

/// Terms that share one MS block. Members commute with each other.
struct ScheduledBlock {
  enum class Kind : std::uint8_t { single_term, permutation_partners, shared_core };
  Kind kind = Kind::single_term;
  std::vector<ExcitationTerm> terms;
};

struct TrotterStep {
  Circuit circuit;
  /// Gates of the local part (global phases, Rz, Rzz); the non-local part follows.
  std::size_t local_gate_count = 0;
  /// Non-local blocks in emission order.
  std::vector<ScheduledBlock> schedule;
};

/// Groups non-local terms into blocks. Doubles on the same four modes with
/// the same symmetrization form one block; controlled singles with the same
/// core, symmetrization and every control outside the core window form
/// another. Blocks keep the order of their first member.
std::vector<ScheduledBlock> schedule_terms(const std::vector<ExcitationTerm>& terms);

/// One first-order step:
///   exp(-i dt c) prod_local exp(-i dt w L) prod_blocks prod_terms exp(-i dt w G).
/// Terms inside a block commute, so the circuit equals the ordered product
/// of term exponentials exactly. Throws StructuralError when cfg.reality
/// differs from terms.reality.
TrotterStep build_trotter_step(const HamiltonianTermList& terms, const TrotterConfig& cfg);

/// Circuit for the non-local part alone.
Circuit build_nonlocal_part(const std::vector<ScheduledBlock>& schedule, double dt,
                            std::size_t n_modes, Scheduling scheduling);

/// (dt, || U_step(dt) - exp(-i dt H) ||_2) for each dt. At most 10 modes.
std::vector<std::pair<double, double>> trotter_error_probe(const HamiltonianTermList& terms,
                                                           const std::vector<double>& dts,
                                                           Scheduling scheduling =
                                                               Scheduling::parallelized);

/// Least-squares slope of log(error) against log(dt); pairs with zero error are skipped.
double fitted_log_slope(const std::vector<std::pair<double, double>>& points);

}  // namespace msfermion
