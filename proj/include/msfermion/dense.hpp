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

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

#include "msfermion/circuit.hpp"
#include "msfermion/pauli.hpp"

namespace msfermion {

/// Dense operator on 2^n amplitudes; basis index bit k is qubit k.
using DenseOperator = Eigen::MatrixXcd;

inline constexpr std::size_t kMaxDenseQubits = 12;

/// How an MS gate's matrix is defined.
/// `targeted`: exp(-i pi/4 sum_{j<k} P_j P_k) over the target pairs.
/// `collective`: exp(-i pi/8 (sum_j P_j)^2), which adds the global phase e^{-i pi n/8}.
enum class MsConvention { targeted, collective };

DenseOperator pauli_matrix(const PauliString& p);
DenseOperator pauli_sum_matrix(const PauliSum& s);

/// Ordered product of gate matrices; the first gate is rightmost.
DenseOperator circuit_unitary(const Circuit& c, MsConvention convention = MsConvention::targeted);
/// Left-multiplies `u` (2^n rows) by the matrix of `g`.
void apply_gate(DenseOperator& u, std::size_t n_qubits, const Gate& g,
                MsConvention convention = MsConvention::targeted);

/// exp(-i angle M(g)) by per-block spectral decomposition. `g` must be
/// Hermitian up to 1e-12 (NonHermitianError otherwise).
DenseOperator generator_unitary(const PauliSum& g, double angle);

enum class EquivalenceMode { exact, global_phase };

struct EquivalenceVerdict {
  bool pass = false;
  /// Frobenius norm of u - lambda v.
  double distance = 0.0;
  /// Unit phase applied to v (1 in exact mode).
  std::complex<double> phase{1.0, 0.0};
};

/// In global_phase mode lambda is the phase of tr(v^dagger u), which minimizes
/// the Frobenius distance over unit phases.
EquivalenceVerdict assert_equivalent(const DenseOperator& u, const DenseOperator& v,
                                     EquivalenceMode mode, double tol);

double spectral_norm(const DenseOperator& m);
/// ||U^dagger U - I|| in Frobenius norm.
double unitarity_defect(const DenseOperator& u);

}  // namespace msfermion
