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
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "msfermion/fermion.hpp"
#include "msfermion/pauli.hpp"

namespace msfermion {

enum class Reality : std::uint8_t { complex, real };

const char* reality_name(Reality r);

/// One- and two-electron integrals of
///   H = c + sum_pq h_pq a_p^dagger a_q + 1/2 sum_pqrs h_pqrs a_p^dagger a_q^dagger a_r a_s.
///
/// Two-body values are stored once per symmetry orbit, under the
/// lexicographically smallest index tuple. Complex tables use
/// h_pqrs = h_qpsr = conj(h_rspq) = conj(h_srqp); real tables add
/// h_pqrs = h_rqps = h_spqr = h_psrq = h_qrsp. Lookups of any member return
/// the value the symmetry implies.
class IntegralTable {
 public:
  using OneKey = std::array<std::size_t, 2>;
  using TwoKey = std::array<std::size_t, 4>;

  /// Largest disagreement tolerated between entries of one orbit.
  static constexpr double kSymmetryTolerance = 1e-12;

  IntegralTable(std::size_t n_modes, Reality reality);

  std::size_t n_modes() const noexcept { return n_modes_; }
  Reality reality() const noexcept { return reality_; }

  double constant() const noexcept { return constant_; }
  void set_constant(double c) { constant_ = c; }

  /// Records h_pq (0-based). Re-setting any orbit member must agree within
  /// kSymmetryTolerance, otherwise SymmetryError names both tuples.
  void set_one_body(std::size_t p, std::size_t q, std::complex<double> value);
  void set_two_body(std::size_t p, std::size_t q, std::size_t r, std::size_t s,
                    std::complex<double> value);

  std::complex<double> one_body(std::size_t p, std::size_t q) const;
  std::complex<double> two_body(std::size_t p, std::size_t q, std::size_t r, std::size_t s) const;

  /// Stored orbit representatives.
  const std::map<OneKey, std::complex<double>>& one_body_entries() const noexcept { return one_; }
  const std::map<TwoKey, std::complex<double>>& two_body_entries() const noexcept { return two_; }

  /// The Hamiltonian as a ladder-operator sum (constant as the empty product).
  FermionOperator fermion_operator() const;

 private:
  std::size_t n_modes_;
  Reality reality_;
  double constant_ = 0.0;
  std::map<OneKey, std::complex<double>> one_;
  std::map<TwoKey, std::complex<double>> two_;
  // Tuple that first set each representative, for error messages.
  std::map<OneKey, OneKey> one_source_;
  std::map<TwoKey, TwoKey> two_source_;
};

/// Parses the integral text format (see docs/integral-format.md).
/// Malformed lines raise ParseError; orbit conflicts raise SymmetryError
/// prefixed with the offending line.
IntegralTable parse_integrals(std::string_view document);
IntegralTable load_integrals(const std::filesystem::path& path);

/// A diagonal term: w G~_p^p = 2 w n_p (q unused) or w G~_pq^pq = -2 w n_p n_q.
struct LocalTerm {
  enum class Kind : std::uint8_t { density, coulomb };
  Kind kind = Kind::density;
  std::size_t p = 0;
  std::size_t q = 0;
  double coefficient = 0.0;

  static LocalTerm density(std::size_t p, double coefficient);
  /// p != q; stored with p < q.
  static LocalTerm coulomb(std::size_t p, std::size_t q, double coefficient);

  PauliSum pauli(std::size_t n_modes) const;
  std::string str() const;

  friend bool operator==(const LocalTerm&, const LocalTerm&) = default;
};

/// H = constant + sum of local terms + sum of weighted excitation generators.
struct HamiltonianTermList {
  std::size_t n_modes = 0;
  Reality reality = Reality::real;
  double constant = 0.0;
  /// Densities by mode, then Coulomb terms by (p, q).
  std::vector<LocalTerm> local;
  /// Sorted by excitation_order_key.
  std::vector<ExcitationTerm> excitations;

  bool empty() const noexcept { return local.empty() && excitations.empty() && constant == 0.0; }
  /// Qubit Hamiltonian including the constant.
  PauliSum pauli() const;
  std::string str() const;
};

/// Deterministic ordering key for non-local terms: sorted touched modes,
/// then symmetrization and control, then the canonical lists. Terms that can
/// share an MS block end up adjacent.
std::vector<std::size_t> excitation_order_key(const ExcitationTerm& t);

/// Splits the table's Hamiltonian into density, Coulomb and excitation
/// terms. Each ladder product c A pairs with its adjoint into
/// Re(c) G~ + Im(c) G. Coefficients below 1e-14 are dropped.
HamiltonianTermList term_list(const IntegralTable& table);

/// The listed H3+ (STO-3G) terms on six modes: alpha_k -> 2k, beta_k -> 2k+1.
/// Coefficients in Hartree, rounded to three decimals.
HamiltonianTermList h3plus_builtin();

}  // namespace msfermion
