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

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "msfermion/circuit.hpp"
#include "msfermion/fermion.hpp"
#include "msfermion/pauli.hpp"

namespace msfermion {

/// One MS-framed layer.
///
/// Emitted in time order as: dressing, MS forward on `ms_qubits`, the
/// rotations, MS backward, inverse dressing. Every covered string Q satisfies
/// MS D Q D^dagger MS^dagger = +-Z_A for a set A inside the frame, so
/// exp(-i phi Q) becomes a Z rotation with the sign folded into its angle.
struct SynthesisPlan {
  std::vector<std::size_t> ms_qubits;
  MsAxis axis = MsAxis::xx;
  /// n = |ms_qubits| = 2m or 2m + 1.
  std::size_t parity_m = 0;
  /// Local Cliffords applied before the forward MS, in time order.
  std::vector<std::pair<std::size_t, Clifford1>> dressing;
  /// Letters (phase +1) of the strings this layer rotates.
  std::vector<PauliString> strings;
};

/// exp(-i angle string), optionally conditioned on `control` being |1>.
struct RotationTarget {
  PauliString string;
  double angle = 0.0;
  std::optional<std::size_t> control;
};

/// Groups commuting strings into MS layers. Strings sharing a support are
/// covered by base letter patterns; a base covers each string that differs
/// from it at exactly one qubit. The cover is minimal for up to 64 candidate
/// bases and deterministic: all-axis-letter bases first, then lexicographic.
/// With `allow_multi_z` a single all-X frame per support takes every string
/// and rotations may act on several qubits (CNOT ladders).
std::vector<SynthesisPlan> plan_layers(const std::vector<PauliString>& structure,
                                       MsAxis preferred = MsAxis::xx, bool allow_multi_z = false);

/// Emits the layers of `plans` with the given rotations. Every target string
/// must be covered by a plan (matched by letters). Rotations whose images are
/// multi-qubit Z strings use CNOT ladders.
Circuit emit_layers(const std::vector<SynthesisPlan>& plans,
                    const std::vector<RotationTarget>& targets, std::size_t n_qubits);

/// exp(-i phi/2 P). Two MS gates for n >= 2 qubits, none for n = 1.
Circuit compile_pauli_rotation(const PauliString& p, double phi);
/// Controlled version of compile_pauli_rotation (CRz in place of Rz).
Circuit compile_controlled_pauli_rotation(const PauliString& p, double phi, std::size_t control);

/// exp(-i theta G_p^q) with two MS gates on the parity window [p, q].
Circuit compile_single_excitation(std::size_t p, std::size_t q, double theta,
                                  MsAxis axis = MsAxis::xx, std::size_t n_qubits = 0);

/// exp(-i t0 G_pq^rs) exp(-i t1 G_pr^qs) exp(-i t2 G_ps^qr) with four MS gates.
Circuit compile_double_block(std::size_t p, std::size_t q, std::size_t r, std::size_t s,
                             const std::array<double, 3>& angles, std::size_t n_qubits = 0);

/// exp(-i theta (G_pq^rs + G_ps^rq)) with four MS gates and Rz on two qubits per layer.
Circuit compile_coupled_exchange(std::size_t p, std::size_t q, std::size_t r, std::size_t s,
                                 double theta, std::size_t n_qubits = 0);

enum class ControlledVariant { a, b };

/// exp(-i theta G_pj^qj). Variant a: two MS and CRz gates controlled on j.
/// Variant b: separate G and Z_j G layers, four MS.
Circuit compile_controlled_single(std::size_t p, std::size_t q, std::size_t j, double theta,
                                  ControlledVariant variant = ControlledVariant::a,
                                  std::size_t n_qubits = 0);
/// Several controlled singles sharing the core p -> q, fused into one variant-a
/// block when every control lies outside (p, q). `controls` pairs each control with its angle.
Circuit compile_fused_controlled_single(std::size_t p, std::size_t q,
                                        const std::vector<std::pair<std::size_t, double>>& controls,
                                        std::size_t n_qubits = 0);

/// exp(-i theta G) for an N-fold excitation (coefficient applied).
Circuit compile_higher_excitation(const ExcitationTerm& t, double theta, std::size_t n_qubits = 0);

/// exp(-i theta G~) by conjugating the antisymmetrized circuit with the phase
/// gate on the lowest creation mode.
Circuit compile_symmetrized(const ExcitationTerm& t, double theta, std::size_t n_qubits = 0,
                            ControlledVariant variant = ControlledVariant::a);

/// exp(-i theta * coefficient * G) for any excitation term.
Circuit compile_excitation(const ExcitationTerm& t, double theta, std::size_t n_qubits = 0,
                           ControlledVariant variant = ControlledVariant::a);

/// One MS pair per generator string. With `controlled_core`, a controlled
/// single is lowered as its core strings with controlled rotations instead of
/// expanding (I - Z_j).
Circuit baseline_string_by_string(const ExcitationTerm& t, double theta,
                                  std::size_t n_qubits = 0, bool controlled_core = false);

/// exp(-i theta G_pq^rs) with one XX frame; the three-Y strings use CNOT ladders.
Circuit compile_mixed_cnot(std::size_t p, std::size_t q, std::size_t r, std::size_t s,
                           double theta, std::size_t n_qubits = 0);

/// MS^2 on n qubits equals `phase` times (the axis letter on every qubit if
/// `needs_pauli`, else identity), in the targeted convention.
struct BackwardMsIdentity {
  bool needs_pauli;
  std::complex<double> phase;
};
BackwardMsIdentity backward_ms_identity(std::size_t n);

/// Rewrites every backward MS gate as local Paulis, a forward MS and a global
/// phase, so the unitary is preserved exactly.
Circuit eliminate_backward_ms(const Circuit& c);

/// Number of MS gates compile_higher_excitation is designed around: 2 ceil(4^{N-1} / N).
std::size_t higher_excitation_ms_formula(std::size_t order);

}  // namespace msfermion
