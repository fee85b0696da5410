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
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace msfermion {

/// Single-qubit Pauli letter. The encoding is the symplectic pair (x, z):
/// bit 0 is the X component, bit 1 the Z component, so Y = X|Z.
enum class Pauli : std::uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

char to_char(Pauli p);

/// Element of the phase group {1, i, -1, -i}, stored as the exponent k of i^k.
enum class Phase : std::uint8_t { one = 0, i = 1, minus_one = 2, minus_i = 3 };

constexpr Phase operator*(Phase a, Phase b) {
  return static_cast<Phase>((static_cast<unsigned>(a) + static_cast<unsigned>(b)) & 3U);
}
constexpr Phase conj(Phase a) {
  return static_cast<Phase>((4U - static_cast<unsigned>(a)) & 3U);
}
std::complex<double> to_complex(Phase a);

inline constexpr std::size_t kMaxPauliWidth = 64;

/// Signed tensor product of Pauli letters on `width` qubits.
///
/// Letters are stored as X/Z bitmasks; identity positions simply have both
/// bits clear, so the locality is the popcount of `x | z`. The overall phase
/// is exact: products and conjugations never leave the four-element group.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::size_t width);

  static PauliString single(std::size_t width, std::size_t qubit, Pauli letter);
  static PauliString from_masks(std::size_t width, std::uint64_t x, std::uint64_t z,
                                Phase phase = Phase::one);
  /// Parses "-i X0 Y2 Z5" style text. The optional leading sign is one of
  /// "+", "-", "+i", "-i", "i"; "I" alone denotes the identity.
  static PauliString parse(std::string_view text, std::size_t width);

  std::size_t width() const noexcept { return width_; }
  Phase phase() const noexcept { return phase_; }
  std::uint64_t x_mask() const noexcept { return x_; }
  std::uint64_t z_mask() const noexcept { return z_; }
  std::uint64_t support_mask() const noexcept { return x_ | z_; }

  Pauli letter(std::size_t qubit) const;
  std::size_t locality() const noexcept;
  std::vector<std::size_t> support() const;
  bool is_identity() const noexcept { return (x_ | z_) == 0; }

  void set_letter(std::size_t qubit, Pauli letter);
  void set_phase(Phase phase) noexcept { phase_ = phase; }
  PauliString with_phase(Phase phase) const;
  PauliString operator-() const;

  /// True when both strings carry the same letters, ignoring phase.
  bool same_letters(const PauliString& other) const noexcept {
    return width_ == other.width_ && x_ == other.x_ && z_ == other.z_;
  }
  bool commutes_with(const PauliString& other) const;

  std::string str() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  std::size_t width_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
  Phase phase_ = Phase::one;
};

/// Signed product a*b. Throws StructuralError on width mismatch.
PauliString multiply(const PauliString& a, const PauliString& b);
inline PauliString operator*(const PauliString& a, const PauliString& b) {
  return multiply(a, b);
}

enum class MsAxis : std::uint8_t { xx, yy };

/// Image U p U^dagger where U is the fully entangling MS gate
/// exp(-i pi/4 sum_{j<k in qubits} P_j P_k) with P = X (xx) or Y (yy).
/// `inverse` conjugates by U^dagger instead. The qubit set is treated as a set;
/// duplicates and empty sets are rejected.
PauliString conjugate_by_ms(const PauliString& p, MsAxis axis,
                            std::span<const std::size_t> qubits, bool inverse = false);

/// Single-qubit Clifford gates known to the circuit IR.
enum class Clifford1 : std::uint8_t { h, s, sdg, sx, sxdg, x, y, z };

std::string_view clifford_name(Clifford1 gate);
Clifford1 inverse(Clifford1 gate);

PauliString conjugate_by_clifford1(const PauliString& p, Clifford1 gate, std::size_t qubit);
PauliString conjugate_by_cnot(const PauliString& p, std::size_t control, std::size_t target);
PauliString conjugate_by_cz(const PauliString& p, std::size_t a, std::size_t b);

/// Weighted sum of Pauli strings with a canonical merge: each distinct set of
/// letters appears once, the string phase is folded into the coefficient, and
/// terms whose coefficient vanishes are dropped.
class PauliSum {
 public:
  struct Term {
    std::complex<double> coefficient;
    PauliString string;  // phase is always +1
  };

  static constexpr double kDropTolerance = 1e-14;

  PauliSum() = default;
  explicit PauliSum(std::size_t width) : width_(width) {}
  static PauliSum from_string(const PauliString& s, std::complex<double> coefficient = 1.0);

  std::size_t width() const noexcept { return width_; }
  std::size_t size() const noexcept { return coefficients_.size(); }
  bool empty() const noexcept { return coefficients_.empty(); }

  /// Terms in canonical order (by X mask, then Z mask).
  std::vector<Term> terms() const;
  /// Coefficient multiplying the +1-phase string with the same letters as `s`.
  std::complex<double> coefficient(const PauliString& s) const;

  void add(const PauliString& s, std::complex<double> coefficient = 1.0);
  PauliSum& operator+=(const PauliSum& other);
  PauliSum& operator*=(std::complex<double> scalar);

  PauliSum adjoint() const;
  bool is_hermitian(double tolerance = 1e-12) const;
  /// Largest |Im c| over all terms; zero for a Hermitian sum.
  double hermiticity_residual() const;

  std::string str() const;

  friend PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }
  friend PauliSum operator*(PauliSum a, std::complex<double> s) { return a *= s; }
  friend PauliSum operator*(std::complex<double> s, PauliSum a) { return a *= s; }
  friend PauliSum operator*(const PauliSum& a, const PauliSum& b);

 private:
  using Key = std::pair<std::uint64_t, std::uint64_t>;
  void check_width(std::size_t w);

  std::size_t width_ = 0;
  std::map<Key, std::complex<double>> coefficients_;
};

}  // namespace msfermion
