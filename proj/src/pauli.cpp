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

#include "msfermion/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>

#include <fmt/format.h>

#include "msfermion/errors.hpp"

namespace msfermion {

namespace {

std::uint64_t bit(std::size_t q) { return std::uint64_t{1} << q; }

// Exponent of i picked up by the single-qubit product a*b.
unsigned product_phase(Pauli a, Pauli b) {
  if (a == Pauli::I || b == Pauli::I || a == b) return 0;
  // X*Y = iZ, Y*Z = iX, Z*X = iY; reversed order gives -i.
  const bool cyclic = (a == Pauli::X && b == Pauli::Y) || (a == Pauli::Y && b == Pauli::Z) ||
                      (a == Pauli::Z && b == Pauli::X);
  return cyclic ? 1U : 3U;
}

void check_qubit(std::size_t width, std::size_t q) {
  if (q >= width) {
    throw StructuralError(fmt::format("qubit {} out of range for width {}", q, width));
  }
}

Pauli axis_letter(MsAxis axis) { return axis == MsAxis::xx ? Pauli::X : Pauli::Y; }

}  // namespace

char to_char(Pauli p) {
  switch (p) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    case Pauli::Z: return 'Z';
  }
  return '?';
}

std::complex<double> to_complex(Phase a) {
  switch (a) {
    case Phase::one: return {1.0, 0.0};
    case Phase::i: return {0.0, 1.0};
    case Phase::minus_one: return {-1.0, 0.0};
    case Phase::minus_i: return {0.0, -1.0};
  }
  return {};
}

PauliString::PauliString(std::size_t width) : width_(width) {
  if (width > kMaxPauliWidth) {
    throw StructuralError(fmt::format("width {} exceeds the {}-qubit limit", width, kMaxPauliWidth));
  }
}

PauliString PauliString::single(std::size_t width, std::size_t qubit, Pauli letter) {
  PauliString p(width);
  p.set_letter(qubit, letter);
  return p;
}

PauliString PauliString::from_masks(std::size_t width, std::uint64_t x, std::uint64_t z,
                                    Phase phase) {
  PauliString p(width);
  const std::uint64_t valid = width == 64 ? ~std::uint64_t{0} : bit(width) - 1;
  if (((x | z) & ~valid) != 0) throw StructuralError("mask has bits beyond the string width");
  p.x_ = x;
  p.z_ = z;
  p.phase_ = phase;
  return p;
}

PauliString PauliString::parse(std::string_view text, std::size_t width) {
  PauliString p(width);
  std::size_t pos = 0;
  auto skip_space = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip_space();
  unsigned k = 0;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    if (text[pos] == '-') k = 2;
    ++pos;
  }
  if (pos < text.size() && text[pos] == 'i') {
    k = (k + 1) & 3U;
    ++pos;
    if (pos < text.size() && text[pos] == '*') ++pos;
  }
  skip_space();
  if (pos < text.size() && text[pos] == 'I' &&
      (pos + 1 == text.size() || std::isspace(static_cast<unsigned char>(text[pos + 1])))) {
    ++pos;
    skip_space();
    if (pos != text.size()) throw StructuralError(fmt::format("trailing text in '{}'", text));
    p.phase_ = static_cast<Phase>(k);
    return p;
  }
  while (pos < text.size()) {
    const char c = text[pos++];
    Pauli letter;
    switch (c) {
      case 'X': letter = Pauli::X; break;
      case 'Y': letter = Pauli::Y; break;
      case 'Z': letter = Pauli::Z; break;
      default: throw StructuralError(fmt::format("unexpected '{}' in Pauli string '{}'", c, text));
    }
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos) throw StructuralError(fmt::format("missing qubit index in '{}'", text));
    const std::size_t q = std::stoul(std::string(text.substr(start, pos - start)));
    check_qubit(width, q);
    if (p.letter(q) != Pauli::I) {
      throw StructuralError(fmt::format("qubit {} repeated in '{}'", q, text));
    }
    p.set_letter(q, letter);
    skip_space();
  }
  p.phase_ = static_cast<Phase>(k);
  return p;
}

Pauli PauliString::letter(std::size_t qubit) const {
  check_qubit(width_, qubit);
  const unsigned xb = (x_ >> qubit) & 1U;
  const unsigned zb = (z_ >> qubit) & 1U;
  return static_cast<Pauli>(xb | (zb << 1));
}

std::size_t PauliString::locality() const noexcept {
  return static_cast<std::size_t>(std::popcount(x_ | z_));
}

std::vector<std::size_t> PauliString::support() const {
  std::vector<std::size_t> out;
  for (std::uint64_t m = x_ | z_; m != 0; m &= m - 1) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
  }
  return out;
}

void PauliString::set_letter(std::size_t qubit, Pauli letter) {
  check_qubit(width_, qubit);
  const auto v = static_cast<unsigned>(letter);
  x_ = (x_ & ~bit(qubit)) | ((v & 1U) ? bit(qubit) : 0);
  z_ = (z_ & ~bit(qubit)) | ((v & 2U) ? bit(qubit) : 0);
}

PauliString PauliString::with_phase(Phase phase) const {
  PauliString p = *this;
  p.phase_ = phase;
  return p;
}

PauliString PauliString::operator-() const { return with_phase(phase_ * Phase::minus_one); }

bool PauliString::commutes_with(const PauliString& other) const {
  if (width_ != other.width_) throw StructuralError("Pauli width mismatch");
  const int anti = std::popcount((x_ & other.z_) ^ (z_ & other.x_));
  return anti % 2 == 0;
}

std::string PauliString::str() const {
  static constexpr const char* kSign[] = {"+", "+i", "-", "-i"};
  std::string out = kSign[static_cast<unsigned>(phase_)];
  if (is_identity()) return out + "I";
  bool first = true;
  for (std::size_t q : support()) {
    if (!first) out += ' ';
    first = false;
    out += fmt::format("{}{}", to_char(letter(q)), q);
  }
  return out;
}

PauliString multiply(const PauliString& a, const PauliString& b) {
  if (a.width() != b.width()) {
    throw StructuralError(fmt::format("cannot multiply Pauli strings of widths {} and {}",
                                      a.width(), b.width()));
  }
  unsigned k = static_cast<unsigned>(a.phase()) + static_cast<unsigned>(b.phase());
  const std::uint64_t both = a.support_mask() & b.support_mask();
  for (std::uint64_t m = both; m != 0; m &= m - 1) {
    const auto q = static_cast<std::size_t>(std::countr_zero(m));
    k += product_phase(a.letter(q), b.letter(q));
  }
  return PauliString::from_masks(a.width(), a.x_mask() ^ b.x_mask(), a.z_mask() ^ b.z_mask(),
                                 static_cast<Phase>(k & 3U));
}

PauliString conjugate_by_ms(const PauliString& p, MsAxis axis,
                            std::span<const std::size_t> qubits, bool inverse) {
  if (qubits.empty()) throw StructuralError("MS conjugation needs at least one qubit");
  std::uint64_t set = 0;
  for (std::size_t q : qubits) {
    check_qubit(p.width(), q);
    if (set & bit(q)) throw StructuralError(fmt::format("qubit {} repeated in MS set", q));
    set |= bit(q);
  }
  // U = prod over pairs of exp(-i pi/4 P_a P_b). A pair acts nontrivially exactly
  // when one member anticommutes with P, and then maps Q -> (-i P_a P_b) Q.
  const Pauli a = axis_letter(axis);
  const PauliString axis_on = [&] {
    PauliString s(p.width());
    for (std::size_t q : qubits) s.set_letter(q, a);
    return s;
  }();
  std::uint64_t anti = 0;
  for (std::size_t q : qubits) {
    const Pauli l = p.letter(q);
    if (l != Pauli::I && l != a) anti |= bit(q);
  }
  const std::uint64_t comm = set & ~anti;
  const auto n_anti = static_cast<unsigned>(std::popcount(anti));
  const auto n_comm = static_cast<unsigned>(std::popcount(comm));
  const unsigned pairs = n_anti * n_comm;
  if (pairs == 0) return p;
  // Product of P_a P_b over all pairs: each anticommuting qubit appears n_comm
  // times and each commuting qubit n_anti times.
  std::uint64_t r = 0;
  if (n_comm % 2) r |= anti;
  if (n_anti % 2) r |= comm;
  const std::uint64_t rx = axis_on.x_mask() & r;
  const std::uint64_t rz = axis_on.z_mask() & r;
  const unsigned step = inverse ? 1U : 3U;  // +i for U^dagger, -i for U
  const auto phase = static_cast<Phase>((step * pairs) & 3U);
  return multiply(PauliString::from_masks(p.width(), rx, rz, phase), p);
}

std::string_view clifford_name(Clifford1 gate) {
  switch (gate) {
    case Clifford1::h: return "h";
    case Clifford1::s: return "s";
    case Clifford1::sdg: return "sdg";
    case Clifford1::sx: return "sx";
    case Clifford1::sxdg: return "sxdg";
    case Clifford1::x: return "x";
    case Clifford1::y: return "y";
    case Clifford1::z: return "z";
  }
  return "?";
}

Clifford1 inverse(Clifford1 gate) {
  switch (gate) {
    case Clifford1::s: return Clifford1::sdg;
    case Clifford1::sdg: return Clifford1::s;
    case Clifford1::sx: return Clifford1::sxdg;
    case Clifford1::sxdg: return Clifford1::sx;
    default: return gate;
  }
}

namespace {

struct SignedLetter {
  Pauli letter;
  bool negative;
};

// Images of X and Z under U . U^dagger.
std::pair<SignedLetter, SignedLetter> clifford_images(Clifford1 gate) {
  switch (gate) {
    case Clifford1::h: return {{Pauli::Z, false}, {Pauli::X, false}};
    case Clifford1::s: return {{Pauli::Y, false}, {Pauli::Z, false}};
    case Clifford1::sdg: return {{Pauli::Y, true}, {Pauli::Z, false}};
    case Clifford1::sx: return {{Pauli::X, false}, {Pauli::Y, true}};
    case Clifford1::sxdg: return {{Pauli::X, false}, {Pauli::Y, false}};
    case Clifford1::x: return {{Pauli::X, false}, {Pauli::Z, true}};
    case Clifford1::y: return {{Pauli::X, true}, {Pauli::Z, true}};
    case Clifford1::z: return {{Pauli::X, true}, {Pauli::Z, false}};
  }
  throw UnsupportedGateError("unknown Clifford gate");
}

PauliString signed_single(std::size_t width, std::size_t q, SignedLetter s) {
  return PauliString::single(width, q, s.letter).with_phase(s.negative ? Phase::minus_one
                                                                       : Phase::one);
}

// Rebuilds p from per-qubit X and Z factors: a Y letter is i*X*Z.
template <typename ImageX, typename ImageZ>
PauliString conjugate_generic(const PauliString& p, std::uint64_t touched, ImageX image_x,
                              ImageZ image_z) {
  const std::uint64_t keep = ~touched;
  PauliString out = PauliString::from_masks(p.width(), p.x_mask() & keep, p.z_mask() & keep,
                                            p.phase());
  for (std::uint64_t m = touched & p.support_mask(); m != 0; m &= m - 1) {
    const auto q = static_cast<std::size_t>(std::countr_zero(m));
    const Pauli l = p.letter(q);
    PauliString factor(p.width());
    if (l == Pauli::Y) factor.set_phase(Phase::i);
    if (l == Pauli::X || l == Pauli::Y) factor = multiply(factor, image_x(q));
    if (l == Pauli::Z || l == Pauli::Y) factor = multiply(factor, image_z(q));
    out = multiply(out, factor);
  }
  return out;
}

}  // namespace

PauliString conjugate_by_clifford1(const PauliString& p, Clifford1 gate, std::size_t qubit) {
  check_qubit(p.width(), qubit);
  const auto [ix, iz] = clifford_images(gate);
  return conjugate_generic(
      p, bit(qubit), [&](std::size_t q) { return signed_single(p.width(), q, ix); },
      [&](std::size_t q) { return signed_single(p.width(), q, iz); });
}

PauliString conjugate_by_cnot(const PauliString& p, std::size_t control, std::size_t target) {
  check_qubit(p.width(), control);
  check_qubit(p.width(), target);
  if (control == target) throw StructuralError("CNOT control equals target");
  const std::size_t w = p.width();
  return conjugate_generic(
      p, bit(control) | bit(target),
      [&](std::size_t q) {
        PauliString s = PauliString::single(w, q, Pauli::X);
        if (q == control) s.set_letter(target, Pauli::X);
        return s;
      },
      [&](std::size_t q) {
        PauliString s = PauliString::single(w, q, Pauli::Z);
        if (q == target) s.set_letter(control, Pauli::Z);
        return s;
      });
}

PauliString conjugate_by_cz(const PauliString& p, std::size_t a, std::size_t b) {
  check_qubit(p.width(), a);
  check_qubit(p.width(), b);
  if (a == b) throw StructuralError("CZ qubits coincide");
  const std::size_t w = p.width();
  return conjugate_generic(
      p, bit(a) | bit(b),
      [&](std::size_t q) {
        PauliString s = PauliString::single(w, q, Pauli::X);
        s.set_letter(q == a ? b : a, Pauli::Z);
        return s;
      },
      [&](std::size_t q) { return PauliString::single(w, q, Pauli::Z); });
}

// ---------------------------------------------------------------------------
// PauliSum

PauliSum PauliSum::from_string(const PauliString& s, std::complex<double> coefficient) {
  PauliSum out(s.width());
  out.add(s, coefficient);
  return out;
}

void PauliSum::check_width(std::size_t w) {
  if (coefficients_.empty() && width_ == 0) {
    width_ = w;
    return;
  }
  if (w != width_) {
    throw StructuralError(fmt::format("Pauli sum width {} does not match term width {}", width_, w));
  }
}

std::vector<PauliSum::Term> PauliSum::terms() const {
  std::vector<Term> out;
  out.reserve(coefficients_.size());
  for (const auto& [key, c] : coefficients_) {
    out.push_back({c, PauliString::from_masks(width_, key.first, key.second)});
  }
  return out;
}

std::complex<double> PauliSum::coefficient(const PauliString& s) const {
  auto it = coefficients_.find({s.x_mask(), s.z_mask()});
  return it == coefficients_.end() ? std::complex<double>{} : it->second;
}

void PauliSum::add(const PauliString& s, std::complex<double> coefficient) {
  check_width(s.width());
  const Key key{s.x_mask(), s.z_mask()};
  auto& slot = coefficients_[key];
  slot += coefficient * to_complex(s.phase());
  if (std::abs(slot) <= kDropTolerance) coefficients_.erase(key);
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  if (other.coefficients_.empty()) return *this;
  check_width(other.width_);
  for (const auto& [key, c] : other.coefficients_) {
    auto& slot = coefficients_[key];
    slot += c;
    if (std::abs(slot) <= kDropTolerance) coefficients_.erase(key);
  }
  return *this;
}

PauliSum& PauliSum::operator*=(std::complex<double> scalar) {
  for (auto it = coefficients_.begin(); it != coefficients_.end();) {
    it->second *= scalar;
    if (std::abs(it->second) <= kDropTolerance) {
      it = coefficients_.erase(it);
    } else {
      ++it;
    }
  }
  return *this;
}

PauliSum operator*(const PauliSum& a, const PauliSum& b) {
  if (a.width_ != b.width_ && !a.empty() && !b.empty()) {
    throw StructuralError("Pauli sum width mismatch");
  }
  PauliSum out(std::max(a.width_, b.width_));
  for (const auto& ta : a.terms()) {
    for (const auto& tb : b.terms()) {
      out.add(multiply(ta.string, tb.string), ta.coefficient * tb.coefficient);
    }
  }
  return out;
}

PauliSum PauliSum::adjoint() const {
  PauliSum out(width_);
  for (const auto& [key, c] : coefficients_) out.coefficients_[key] = std::conj(c);
  return out;
}

double PauliSum::hermiticity_residual() const {
  double r = 0.0;
  for (const auto& [key, c] : coefficients_) r = std::max(r, std::abs(c.imag()));
  return r;
}

bool PauliSum::is_hermitian(double tolerance) const {
  return hermiticity_residual() <= tolerance;
}

std::string PauliSum::str() const {
  if (empty()) return "0";
  std::string out;
  for (const auto& t : terms()) {
    if (!out.empty()) out += " + ";
    out += fmt::format("({:.6g}{:+.6g}i)*{}", t.coefficient.real(), t.coefficient.imag(),
                       t.string.str().substr(1));
  }
  return out;
}

}  // namespace msfermion
