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

#include "msfermion/fermion.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "msfermion/errors.hpp"

namespace msfermion {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

// Normal-order key: creations first, then annihilations, each by ascending mode.
bool before(const Ladder& a, const Ladder& b) {
  if (a.kind != b.kind) return a.kind == LadderKind::creation;
  return a.mode < b.mode;
}

void normal_order_into(std::map<FermionOperator::Factors, std::complex<double>>& out,
                       FermionOperator::Factors f, std::complex<double> c) {
  for (std::size_t i = 0; i + 1 < f.size(); ++i) {
    const Ladder a = f[i];
    const Ladder b = f[i + 1];
    if (a.kind == b.kind && a.mode == b.mode) return;  // a^2 = 0
    if (before(a, b)) continue;
    if (a.kind == LadderKind::annihilation && b.kind == LadderKind::creation && a.mode == b.mode) {
      FermionOperator::Factors contracted;
      contracted.reserve(f.size() - 2);
      contracted.insert(contracted.end(), f.begin(), f.begin() + static_cast<std::ptrdiff_t>(i));
      contracted.insert(contracted.end(), f.begin() + static_cast<std::ptrdiff_t>(i + 2), f.end());
      normal_order_into(out, std::move(contracted), c);
    }
    std::swap(f[i], f[i + 1]);
    normal_order_into(out, std::move(f), -c);
    return;
  }
  auto& slot = out[f];
  slot += c;
  if (std::abs(slot) <= PauliSum::kDropTolerance) out.erase(f);
}

// Sign of the permutation sorting `v` ascending; sorts in place. Zero if a value repeats.
int sort_with_sign(std::vector<std::size_t>& v) {
  int sign = 1;
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = 0; j + 1 < v.size() - i; ++j) {
      if (v[j] > v[j + 1]) {
        std::swap(v[j], v[j + 1]);
        sign = -sign;
      } else if (v[j] == v[j + 1]) {
        return 0;
      }
    }
  }
  return sign;
}

void require_increasing(const std::vector<std::size_t>& v, const char* what) {
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    if (v[i] >= v[i + 1]) {
      throw StructuralError(fmt::format("{} indices must be strictly increasing, got {}", what,
                                        fmt::join(v, ",")));
    }
  }
}

PauliSum ladder_pauli(std::size_t n, const Ladder& l) {
  PauliString x(n);
  for (std::size_t k = 0; k < l.mode; ++k) x.set_letter(k, Pauli::Z);
  PauliString y = x;
  x.set_letter(l.mode, Pauli::X);
  y.set_letter(l.mode, Pauli::Y);
  PauliSum out(n);
  out.add(x, 0.5);
  out.add(y, l.kind == LadderKind::creation ? -0.5 * kI : 0.5 * kI);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// FermionOperator

void FermionOperator::check_modes(const Factors& factors) const {
  for (const auto& l : factors) {
    if (l.mode >= n_modes_) {
      throw StructuralError(fmt::format("mode {} out of range for {} modes", l.mode, n_modes_));
    }
  }
}

FermionOperator FermionOperator::product(std::size_t n_modes, const Factors& factors,
                                         std::complex<double> coefficient) {
  FermionOperator op(n_modes);
  op.add(factors, coefficient);
  return op;
}

FermionOperator FermionOperator::number(std::size_t n_modes, std::size_t mode) {
  return product(n_modes, {cre(mode), ann(mode)});
}

void FermionOperator::add(const Factors& factors, std::complex<double> coefficient) {
  check_modes(factors);
  normal_order_into(products_, factors, coefficient);
}

FermionOperator FermionOperator::adjoint() const {
  FermionOperator out(n_modes_);
  for (const auto& [f, c] : products_) {
    Factors g(f.rbegin(), f.rend());
    for (auto& l : g) {
      l.kind = l.kind == LadderKind::creation ? LadderKind::annihilation : LadderKind::creation;
    }
    out.add(g, std::conj(c));
  }
  return out;
}

bool FermionOperator::is_hermitian(double tolerance) const {
  const FermionOperator diff = *this - adjoint();
  for (const auto& [f, c] : diff.products_) {
    if (std::abs(c) > tolerance) return false;
  }
  return true;
}

FermionOperator& FermionOperator::operator+=(const FermionOperator& other) {
  n_modes_ = std::max(n_modes_, other.n_modes_);
  for (const auto& [f, c] : other.products_) {
    auto& slot = products_[f];
    slot += c;
    if (std::abs(slot) <= PauliSum::kDropTolerance) products_.erase(f);
  }
  return *this;
}

FermionOperator& FermionOperator::operator*=(std::complex<double> scalar) {
  for (auto it = products_.begin(); it != products_.end();) {
    it->second *= scalar;
    if (std::abs(it->second) <= PauliSum::kDropTolerance) {
      it = products_.erase(it);
    } else {
      ++it;
    }
  }
  return *this;
}

FermionOperator operator*(const FermionOperator& a, const FermionOperator& b) {
  FermionOperator out(std::max(a.n_modes_, b.n_modes_));
  for (const auto& [fa, ca] : a.products_) {
    for (const auto& [fb, cb] : b.products_) {
      FermionOperator::Factors f = fa;
      f.insert(f.end(), fb.begin(), fb.end());
      normal_order_into(out.products_, std::move(f), ca * cb);
    }
  }
  return out;
}

std::string FermionOperator::str() const {
  if (products_.empty()) return "0";
  std::string out;
  for (const auto& [f, c] : products_) {
    if (!out.empty()) out += " + ";
    out += fmt::format("({:.6g}{:+.6g}i)", c.real(), c.imag());
    for (const auto& l : f) {
      out += fmt::format(" a{}{}", l.mode, l.kind == LadderKind::creation ? "^" : "");
    }
  }
  return out;
}

PauliSum jw_map(const FermionOperator& op) {
  const std::size_t n = op.n_modes();
  PauliSum out(n);
  for (const auto& [factors, c] : op.products()) {
    PauliSum term = PauliSum::from_string(PauliString(n), c);
    for (const auto& l : factors) {
      if (l.mode >= n) throw StructuralError(fmt::format("mode {} out of range", l.mode));
      term = term * ladder_pauli(n, l);
    }
    out += term;
  }
  return out;
}

// ---------------------------------------------------------------------------
// ExcitationTerm

ExcitationTerm ExcitationTerm::single(std::size_t p, std::size_t q, bool symmetrized,
                                      double coefficient) {
  if (p >= q) {
    throw StructuralError(fmt::format("single excitation needs p < q, got p={} q={}", p, q));
  }
  return {ExcitationKind::single, {p}, {q}, 0, symmetrized, coefficient};
}

ExcitationTerm ExcitationTerm::double_excitation(std::size_t p, std::size_t q, std::size_t r,
                                                 std::size_t s, bool symmetrized,
                                                 double coefficient) {
  require_increasing({p, q, r, s}, "double excitation");
  return {ExcitationKind::double_excitation, {p, q}, {r, s}, 0, symmetrized, coefficient};
}

ExcitationTerm ExcitationTerm::controlled_single(std::size_t p, std::size_t q, std::size_t j,
                                                 bool symmetrized, double coefficient) {
  if (p >= q) {
    throw StructuralError(
        fmt::format("controlled single excitation needs p < q, got p={} q={}", p, q));
  }
  if (j == p || j == q) {
    throw StructuralError(fmt::format(
        "control mode {} coincides with an excitation mode; use a density term instead", j));
  }
  return {ExcitationKind::controlled_single, {p}, {q}, j, symmetrized, coefficient};
}

ExcitationTerm ExcitationTerm::higher(std::vector<std::size_t> occupied,
                                      std::vector<std::size_t> virt, bool symmetrized,
                                      double coefficient) {
  if (occupied.empty() || occupied.size() != virt.size()) {
    throw StructuralError("higher excitation needs equal, non-empty occupied and virtual lists");
  }
  require_increasing(occupied, "occupied");
  require_increasing(virt, "virtual");
  for (std::size_t o : occupied) {
    if (std::find(virt.begin(), virt.end(), o) != virt.end()) {
      throw StructuralError(fmt::format("mode {} is both occupied and virtual", o));
    }
  }
  if (occupied.front() > virt.front()) {
    throw StructuralError("higher excitation needs occupied[0] < virtual[0]; use from_ladder");
  }
  ExcitationKind kind = ExcitationKind::higher;
  if (occupied.size() == 1) kind = ExcitationKind::single;
  return {kind, std::move(occupied), std::move(virt), 0, symmetrized, coefficient};
}

ExcitationTerm ExcitationTerm::from_ladder(const std::vector<std::size_t>& creation,
                                           const std::vector<std::size_t>& annihilation,
                                           bool symmetrized, double coefficient) {
  if (creation.empty() || creation.size() != annihilation.size()) {
    throw StructuralError("excitation needs equal, non-empty creation and annihilation lists");
  }
  std::vector<std::size_t> c = creation;
  std::vector<std::size_t> a = annihilation;
  std::vector<std::size_t> shared;
  for (std::size_t m : c) {
    if (std::find(a.begin(), a.end(), m) != a.end()) shared.push_back(m);
  }
  // Under A -> A^dagger, G flips sign and G~ does not.
  const double adjoint_sign = symmetrized ? 1.0 : -1.0;

  if (shared.empty()) {
    const int sign = sort_with_sign(c) * sort_with_sign(a);
    if (sign == 0) throw StructuralError("repeated mode in an excitation list");
    double coef = coefficient * sign;
    if (c.front() > a.front()) {
      std::swap(c, a);
      coef *= adjoint_sign;
    }
    ExcitationKind kind = ExcitationKind::higher;
    if (c.size() == 1) kind = ExcitationKind::single;
    if (c.size() == 2) kind = ExcitationKind::double_excitation;
    return {kind, std::move(c), std::move(a), 0, symmetrized, coef};
  }
  if (shared.size() == 1 && c.size() == 2) {
    const std::size_t j = shared.front();
    double coef = coefficient;
    // Bring both lists to (core, j).
    if (c[0] == j) {
      std::swap(c[0], c[1]);
      coef = -coef;
    }
    if (a[0] == j) {
      std::swap(a[0], a[1]);
      coef = -coef;
    }
    std::size_t p = c[0];
    std::size_t q = a[0];
    if (p > q) {
      std::swap(p, q);
      coef *= adjoint_sign;
    }
    return controlled_single(p, q, j, symmetrized, coef);
  }
  throw StructuralError(fmt::format(
      "ladder product a^dagger({}) a({}) is a density or Coulomb term, not an excitation",
      fmt::join(creation, ","), fmt::join(annihilation, ",")));
}

std::size_t ExcitationTerm::max_mode() const {
  std::size_t m = control;
  for (std::size_t x : creation) m = std::max(m, x);
  for (std::size_t x : annihilation) m = std::max(m, x);
  return m;
}

ExcitationTerm ExcitationTerm::with_coefficient(double c) const {
  ExcitationTerm t = *this;
  t.coefficient = c;
  return t;
}

std::string ExcitationTerm::str() const {
  std::string body = fmt::format("{}_{}^{}", symmetrized ? "G~" : "G", fmt::join(creation, ","),
                                 fmt::join(annihilation, ","));
  if (kind == ExcitationKind::controlled_single) {
    body = fmt::format("{}_{},{}^{},{}", symmetrized ? "G~" : "G", creation[0], control,
                       annihilation[0], control);
  }
  return fmt::format("{:.17g}*{}", coefficient, body);
}

FermionOperator generator_operator(const ExcitationTerm& t, std::size_t n_modes) {
  FermionOperator::Factors f;
  for (std::size_t m : t.creation) f.push_back(cre(m));
  if (t.kind == ExcitationKind::controlled_single) f.push_back(cre(t.control));
  for (std::size_t m : t.annihilation) f.push_back(ann(m));
  if (t.kind == ExcitationKind::controlled_single) f.push_back(ann(t.control));
  const FermionOperator a = FermionOperator::product(n_modes, f);
  if (t.symmetrized) return a + a.adjoint();
  return (a - a.adjoint()) * kI;
}

PauliSum generator_pauli(const ExcitationTerm& t, std::size_t n_modes) {
  if (t.max_mode() >= n_modes) {
    throw StructuralError(
        fmt::format("excitation {} exceeds the {}-mode register", t.str(), n_modes));
  }
  PauliSum g = jw_map(generator_operator(t, n_modes));
  // Coefficients are exactly real; clear rounding residue in the imaginary part.
  PauliSum out(n_modes);
  for (const auto& term : g.terms()) out.add(term.string, term.coefficient.real());
  return out;
}

PauliSum weighted_pauli(const ExcitationTerm& t, std::size_t n_modes) {
  return generator_pauli(t, n_modes) * std::complex<double>(t.coefficient);
}

std::pair<ExcitationTerm, int> local_equivalence_conjugate(const ExcitationTerm& t,
                                                           std::size_t j) {
  if (t.symmetrized) {
    throw StructuralError("local equivalence maps antisymmetrized generators only");
  }
  auto contains = [](const std::vector<std::size_t>& v, std::size_t m) {
    return std::find(v.begin(), v.end(), m) != v.end();
  };
  ExcitationTerm out = t;
  if (contains(t.creation, j)) {
    out.symmetrized = true;
    return {out, +1};
  }
  if (contains(t.annihilation, j)) {
    out.symmetrized = true;
    return {out, -1};
  }
  return {out, +1};
}

}  // namespace msfermion
