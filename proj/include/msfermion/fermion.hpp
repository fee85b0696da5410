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
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "msfermion/pauli.hpp"

namespace msfermion {

enum class LadderKind : std::uint8_t { creation, annihilation };

struct Ladder {
  std::size_t mode;
  LadderKind kind;

  friend auto operator<=>(const Ladder&, const Ladder&) = default;
};

inline Ladder cre(std::size_t mode) { return {mode, LadderKind::creation}; }
inline Ladder ann(std::size_t mode) { return {mode, LadderKind::annihilation}; }

/// Linear combination of products of ladder operators on `n_modes` modes.
///
/// Products are kept in normal order: creations left of annihilations, each
/// group sorted by ascending mode. Reordering applies the canonical
/// anticommutation relations, so contraction terms appear where needed.
class FermionOperator {
 public:
  using Factors = std::vector<Ladder>;

  explicit FermionOperator(std::size_t n_modes = 0) : n_modes_(n_modes) {}

  static FermionOperator product(std::size_t n_modes, const Factors& factors,
                                 std::complex<double> coefficient = 1.0);
  static FermionOperator number(std::size_t n_modes, std::size_t mode);

  std::size_t n_modes() const noexcept { return n_modes_; }
  const std::map<Factors, std::complex<double>>& products() const noexcept { return products_; }
  bool empty() const noexcept { return products_.empty(); }

  /// Adds coefficient * factors after normal ordering.
  void add(const Factors& factors, std::complex<double> coefficient = 1.0);

  FermionOperator adjoint() const;
  bool is_hermitian(double tolerance = 1e-12) const;

  FermionOperator& operator+=(const FermionOperator& other);
  FermionOperator& operator*=(std::complex<double> scalar);
  friend FermionOperator operator+(FermionOperator a, const FermionOperator& b) { return a += b; }
  friend FermionOperator operator-(FermionOperator a, const FermionOperator& b) {
    return a += b * std::complex<double>(-1.0);
  }
  friend FermionOperator operator*(FermionOperator a, std::complex<double> s) { return a *= s; }
  friend FermionOperator operator*(std::complex<double> s, FermionOperator a) { return a *= s; }
  friend FermionOperator operator*(const FermionOperator& a, const FermionOperator& b);

  std::string str() const;

 private:
  void check_modes(const Factors& factors) const;

  std::size_t n_modes_;
  std::map<Factors, std::complex<double>> products_;
};

/// Jordan-Wigner image. Qubit k holds mode k with |1> = occupied, and
/// a_p^dagger -> (prod_{k<p} Z_k) (X_p - i Y_p) / 2.
PauliSum jw_map(const FermionOperator& op);

enum class ExcitationKind : std::uint8_t { single, double_excitation, controlled_single, higher };

/// One excitation generator with a real weight.
///
/// With A = a^dagger_{c_1} ... a^dagger_{c_N} a_{a_1} ... a_{a_N} (c = creation,
/// a = annihilation) the generator is G = i(A - A^dagger) or, when
/// `symmetrized`, G~ = A + A^dagger. A controlled single excitation G_pj^qj
/// uses A = a_p^dagger a_j^dagger a_q a_j = -n_j a_p^dagger a_q; its creation
/// and annihilation lists hold only p and q, and the control is stored apart.
///
/// Canonical form: both lists sorted ascending, creation[0] < annihilation[0].
/// For ordinary doubles this yields the three permutation partners
/// (pq|rs), (pr|qs), (ps|qr) of a sorted quadruple p<q<r<s.
struct ExcitationTerm {
  ExcitationKind kind = ExcitationKind::single;
  std::vector<std::size_t> creation;
  std::vector<std::size_t> annihilation;
  std::size_t control = 0;
  bool symmetrized = false;
  double coefficient = 1.0;

  /// G_p^q, p < q.
  static ExcitationTerm single(std::size_t p, std::size_t q, bool symmetrized = false,
                               double coefficient = 1.0);
  /// G_pq^rs, p < q < r < s.
  static ExcitationTerm double_excitation(std::size_t p, std::size_t q, std::size_t r,
                                          std::size_t s, bool symmetrized = false,
                                          double coefficient = 1.0);
  /// G_pj^qj = -n_j G_p^q, p < q, j not in {p, q}.
  static ExcitationTerm controlled_single(std::size_t p, std::size_t q, std::size_t j,
                                          bool symmetrized = false, double coefficient = 1.0);
  /// N-fold excitation with creation = occupied, annihilation = virtual.
  static ExcitationTerm higher(std::vector<std::size_t> occupied, std::vector<std::size_t> virt,
                               bool symmetrized = false, double coefficient = 1.0);
  /// Canonicalizes the generator built from A = prod a^dagger_{creation} prod a_{annihilation}
  /// in the given operator order. Reordering signs are folded into the coefficient.
  /// Lists sharing one mode become a controlled single excitation; lists sharing
  /// everything (densities, Coulomb terms) are rejected.
  static ExcitationTerm from_ladder(const std::vector<std::size_t>& creation,
                                    const std::vector<std::size_t>& annihilation,
                                    bool symmetrized, double coefficient = 1.0);

  /// Excitation order N (1 for singles and controlled singles).
  std::size_t order() const noexcept { return creation.size(); }
  /// All modes the generator touches, including the control and parity strings.
  std::size_t max_mode() const;
  ExcitationTerm with_coefficient(double c) const;
  std::string str() const;

  friend bool operator==(const ExcitationTerm&, const ExcitationTerm&) = default;
};

/// Unit-weight generator as a fermion operator (coefficient not applied).
FermionOperator generator_operator(const ExcitationTerm& t, std::size_t n_modes);
/// Unit-weight generator in the Pauli basis on `n_modes` qubits.
PauliSum generator_pauli(const ExcitationTerm& t, std::size_t n_modes);
/// coefficient * generator in the Pauli basis.
PauliSum weighted_pauli(const ExcitationTerm& t, std::size_t n_modes);

/// exp(-i pi/2 n_j) G exp(+i pi/2 n_j) = sign * result for an antisymmetrized G.
/// `result` is symmetrized when j is a creation (sign +1) or annihilation
/// (sign -1) mode, and `t` itself with sign +1 otherwise. The control of a
/// controlled single never symmetrizes.
std::pair<ExcitationTerm, int> local_equivalence_conjugate(const ExcitationTerm& t,
                                                           std::size_t j);

}  // namespace msfermion
