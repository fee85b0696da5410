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

#include "msfermion/hamiltonian.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <tuple>
#include <utility>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "msfermion/errors.hpp"

namespace msfermion {

namespace {

using OneKey = IntegralTable::OneKey;
using TwoKey = IntegralTable::TwoKey;

// Orbit member plus whether its value is the conjugate of the seed's.
template <typename Key>
using Orbit = std::vector<std::pair<Key, bool>>;

Orbit<OneKey> one_orbit(const OneKey& k) {
  Orbit<OneKey> out{{k, false}};
  if (k[0] != k[1]) {
    out.push_back({{k[1], k[0]}, true});
  } else {
    out.push_back({k, true});
  }
  return out;
}

Orbit<TwoKey> two_orbit(const TwoKey& seed, Reality reality) {
  Orbit<TwoKey> out{{seed, false}};
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto [k, c] = out[i];
    const auto [p, q, r, s] = k;
    std::vector<std::pair<TwoKey, bool>> next{{{q, p, s, r}, c}, {{r, s, p, q}, !c}};
    if (reality == Reality::real) next.push_back({{r, q, p, s}, c});
    for (const auto& n : next) {
      // A tuple reached with both flags is kept twice; set() checks it is real.
      if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
    }
  }
  return out;
}

template <typename Key>
std::pair<Key, bool> representative(const Orbit<Key>& orbit) {
  auto best = orbit.front();
  for (const auto& m : orbit) {
    if (m.first < best.first) best = m;
  }
  return best;
}

std::complex<double> apply_flag(std::complex<double> v, bool conj) {
  return conj ? std::conj(v) : v;
}

template <std::size_t N>
std::string tuple_str(const std::array<std::size_t, N>& k) {
  return fmt::format("({})", fmt::join(k, ","));
}

template <typename Key>
void store(std::map<Key, std::complex<double>>& values, std::map<Key, Key>& sources,
           const Orbit<Key>& orbit, const Key& key, std::complex<double> value, Reality reality) {
  constexpr double tol = IntegralTable::kSymmetryTolerance;
  if (reality == Reality::real) {
    if (std::abs(value.imag()) > tol) {
      throw SymmetryError(fmt::format("{} has imaginary part {} in a real table", tuple_str(key),
                                      value.imag()));
    }
    value = value.real();
  }
  for (const auto& [member, conj] : orbit) {
    if (member == key && conj && std::abs(value.imag()) > tol) {
      throw SymmetryError(
          fmt::format("{} maps to its own conjugate and must be real", tuple_str(key)));
    }
  }
  const auto [rep, conj] = representative(orbit);
  const std::complex<double> at_rep = apply_flag(value, conj);
  auto it = values.find(rep);
  if (it == values.end()) {
    values.emplace(rep, at_rep);
    sources.emplace(rep, key);
    return;
  }
  if (std::abs(it->second - at_rep) > tol) {
    const Key& first = sources.at(rep);
    throw SymmetryError(fmt::format("{} conflicts with {} (values differ by {:.3e})",
                                    tuple_str(key), tuple_str(first),
                                    std::abs(it->second - at_rep)));
  }
}

FermionOperator::Factors ladder_factors(const std::vector<std::size_t>& creation,
                                        const std::vector<std::size_t>& annihilation) {
  FermionOperator::Factors f;
  for (std::size_t m : creation) f.push_back(cre(m));
  for (std::size_t m : annihilation) f.push_back(ann(m));
  return f;
}

}  // namespace

const char* reality_name(Reality r) { return r == Reality::real ? "real" : "complex"; }

IntegralTable::IntegralTable(std::size_t n_modes, Reality reality)
    : n_modes_(n_modes), reality_(reality) {
  if (n_modes == 0 || n_modes > kMaxPauliWidth) {
    throw StructuralError(fmt::format("integral table needs 1..{} modes, got {}",
                                      kMaxPauliWidth, n_modes));
  }
}

void IntegralTable::set_one_body(std::size_t p, std::size_t q, std::complex<double> value) {
  if (p >= n_modes_ || q >= n_modes_) {
    throw StructuralError(fmt::format("one-body index ({},{}) outside {} modes", p, q, n_modes_));
  }
  const OneKey key{p, q};
  store(one_, one_source_, one_orbit(key), key, value, reality_);
}

void IntegralTable::set_two_body(std::size_t p, std::size_t q, std::size_t r, std::size_t s,
                                 std::complex<double> value) {
  if (std::max({p, q, r, s}) >= n_modes_) {
    throw StructuralError(
        fmt::format("two-body index ({},{},{},{}) outside {} modes", p, q, r, s, n_modes_));
  }
  const TwoKey key{p, q, r, s};
  store(two_, two_source_, two_orbit(key, reality_), key, value, reality_);
}

std::complex<double> IntegralTable::one_body(std::size_t p, std::size_t q) const {
  const auto [rep, conj] = representative(one_orbit({p, q}));
  auto it = one_.find(rep);
  return it == one_.end() ? 0.0 : apply_flag(it->second, conj);
}

std::complex<double> IntegralTable::two_body(std::size_t p, std::size_t q, std::size_t r,
                                             std::size_t s) const {
  const auto [rep, conj] = representative(two_orbit({p, q, r, s}, reality_));
  auto it = two_.find(rep);
  return it == two_.end() ? 0.0 : apply_flag(it->second, conj);
}

FermionOperator IntegralTable::fermion_operator() const {
  FermionOperator op(n_modes_);
  if (constant_ != 0.0) op.add({}, constant_);
  auto distinct = [](auto orbit) {
    std::sort(orbit.begin(), orbit.end());
    orbit.erase(std::unique(orbit.begin(), orbit.end(),
                            [](const auto& a, const auto& b) { return a.first == b.first; }),
                orbit.end());
    return orbit;
  };
  for (const auto& [rep, value] : one_) {
    for (const auto& [k, conj] : distinct(one_orbit(rep))) {
      op.add({cre(k[0]), ann(k[1])}, apply_flag(value, conj));
    }
  }
  for (const auto& [rep, value] : two_) {
    for (const auto& [k, conj] : distinct(two_orbit(rep, reality_))) {
      if (k[0] == k[1] || k[2] == k[3]) continue;
      op.add({cre(k[0]), cre(k[1]), ann(k[2]), ann(k[3])}, 0.5 * apply_flag(value, conj));
    }
  }
  return op;
}

namespace {

template <typename T>
bool parse_number(std::string_view token, T& out) {
  if (token.size() > 1 && token.front() == '+') token.remove_prefix(1);
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, out);
  return ec == std::errc() && ptr == end;
}

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

IntegralTable parse_integrals(std::string_view document) {
  std::optional<IntegralTable> table;
  bool have_constant = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= document.size()) {
    std::size_t eol = document.find('\n', pos);
    if (eol == std::string_view::npos) eol = document.size();
    std::string_view line = document.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto tok = split_tokens(line);
    if (tok.empty()) continue;

    if (!table) {
      std::size_t n = 0;
      if (tok.size() != 4 || tok[0] != "norb" || tok[2] != "reality" ||
          !parse_number(tok[1], n)) {
        throw ParseError(line_no, "expected header 'norb <n> reality <complex|real>'");
      }
      Reality reality;
      if (tok[3] == "real") {
        reality = Reality::real;
      } else if (tok[3] == "complex") {
        reality = Reality::complex;
      } else {
        throw ParseError(line_no, fmt::format("unknown reality '{}'", tok[3]));
      }
      if (n == 0 || n > kMaxPauliWidth) {
        throw ParseError(line_no, fmt::format("norb must be in 1..{}", kMaxPauliWidth));
      }
      table.emplace(n, reality);
      continue;
    }

    if (tok.size() != 5 && tok.size() != 6) {
      throw ParseError(line_no, fmt::format("expected '<re> [<im>] p q r s', got {} fields",
                                            tok.size()));
    }
    double re = 0.0;
    double im = 0.0;
    if (!parse_number(tok[0], re) || !std::isfinite(re)) {
      throw ParseError(line_no, fmt::format("bad real part '{}'", tok[0]));
    }
    const std::size_t first_index = tok.size() - 4;
    if (tok.size() == 6 && (!parse_number(tok[1], im) || !std::isfinite(im))) {
      throw ParseError(line_no, fmt::format("bad imaginary part '{}'", tok[1]));
    }
    if (table->reality() == Reality::real && std::abs(im) > IntegralTable::kSymmetryTolerance) {
      throw ParseError(line_no, "imaginary part in a table declared real");
    }
    std::array<std::size_t, 4> idx{};
    for (std::size_t k = 0; k < 4; ++k) {
      if (!parse_number(tok[first_index + k], idx[k])) {
        throw ParseError(line_no, fmt::format("bad index '{}'", tok[first_index + k]));
      }
      if (idx[k] > table->n_modes()) {
        throw ParseError(line_no, fmt::format("index {} exceeds norb {}", idx[k],
                                              table->n_modes()));
      }
    }
    const std::complex<double> value(re, im);
    const auto [p, q, r, s] = idx;
    try {
      if (p == 0 && q == 0 && r == 0 && s == 0) {
        if (std::abs(im) > IntegralTable::kSymmetryTolerance) {
          throw ParseError(line_no, "constant shift must be real");
        }
        if (have_constant && std::abs(table->constant() - re) > IntegralTable::kSymmetryTolerance) {
          throw ParseError(line_no, "constant shift given twice with different values");
        }
        table->set_constant(re);
        have_constant = true;
      } else if (r == 0 && s == 0) {
        if (p == 0 || q == 0) throw ParseError(line_no, "one-body entry needs p, q >= 1");
        table->set_one_body(p - 1, q - 1, value);
      } else {
        if (p == 0 || q == 0 || r == 0 || s == 0) {
          throw ParseError(line_no, "two-body entry needs all indices >= 1");
        }
        table->set_two_body(p - 1, q - 1, r - 1, s - 1, value);
      }
    } catch (const SymmetryError& e) {
      throw SymmetryError(fmt::format("line {}: {}", line_no, e.what()));
    }
  }
  if (!table) throw ParseError(0, "missing 'norb' header");
  return std::move(*table);
}

IntegralTable load_integrals(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, fmt::format("cannot open {}", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_integrals(buf.str());
}

LocalTerm LocalTerm::density(std::size_t p, double coefficient) {
  return {Kind::density, p, p, coefficient};
}

LocalTerm LocalTerm::coulomb(std::size_t p, std::size_t q, double coefficient) {
  if (p == q) throw StructuralError("Coulomb term needs two distinct modes");
  return {Kind::coulomb, std::min(p, q), std::max(p, q), coefficient};
}

PauliSum LocalTerm::pauli(std::size_t n_modes) const {
  const PauliString id(n_modes);
  const PauliString zp = PauliString::single(n_modes, p, Pauli::Z);
  PauliSum out(n_modes);
  if (kind == Kind::density) {
    // 2 w n_p = w (I - Z_p)
    out.add(id, coefficient);
    out.add(zp, -coefficient);
    return out;
  }
  // -2 w n_p n_q = -w/2 (I - Z_p - Z_q + Z_p Z_q)
  const PauliString zq = PauliString::single(n_modes, q, Pauli::Z);
  const double h = -0.5 * coefficient;
  out.add(id, h);
  out.add(zp, -h);
  out.add(zq, -h);
  out.add(zp * zq, h);
  return out;
}

std::string LocalTerm::str() const {
  if (kind == Kind::density) return fmt::format("{:+.6g} G~[{}|{}]", coefficient, p, p);
  return fmt::format("{:+.6g} G~[{},{}|{},{}]", coefficient, p, q, p, q);
}

PauliSum HamiltonianTermList::pauli() const {
  PauliSum out(n_modes);
  if (constant != 0.0) out.add(PauliString(n_modes), constant);
  for (const auto& t : local) out += t.pauli(n_modes);
  for (const auto& t : excitations) out += weighted_pauli(t, n_modes);
  return out;
}

std::string HamiltonianTermList::str() const {
  std::string out = fmt::format("# {} modes, {} orbitals, constant {:.6g}\n", n_modes,
                                reality_name(reality), constant);
  for (const auto& t : local) out += t.str() + "\n";
  for (const auto& t : excitations) out += t.str() + "\n";
  return out;
}

std::vector<std::size_t> excitation_order_key(const ExcitationTerm& t) {
  std::vector<std::size_t> modes = t.creation;
  modes.insert(modes.end(), t.annihilation.begin(), t.annihilation.end());
  if (t.kind == ExcitationKind::controlled_single) modes.push_back(t.control);
  std::sort(modes.begin(), modes.end());
  std::vector<std::size_t> key{modes.size()};
  key.insert(key.end(), modes.begin(), modes.end());
  key.push_back(t.symmetrized ? 1 : 0);
  key.push_back(t.control);
  key.insert(key.end(), t.creation.begin(), t.creation.end());
  key.insert(key.end(), t.annihilation.begin(), t.annihilation.end());
  return key;
}

namespace {

void sort_terms(HamiltonianTermList& h) {
  std::sort(h.local.begin(), h.local.end(), [](const LocalTerm& a, const LocalTerm& b) {
    return std::tie(a.kind, a.p, a.q) < std::tie(b.kind, b.p, b.q);
  });
  std::stable_sort(h.excitations.begin(), h.excitations.end(),
                   [](const ExcitationTerm& a, const ExcitationTerm& b) {
                     return excitation_order_key(a) < excitation_order_key(b);
                   });
}

}  // namespace

HamiltonianTermList term_list(const IntegralTable& table) {
  constexpr double drop = PauliSum::kDropTolerance;
  HamiltonianTermList out;
  out.n_modes = table.n_modes();
  out.reality = table.reality();
  out.constant = table.constant();

  const FermionOperator op = table.fermion_operator();
  const auto& products = op.products();
  for (const auto& [factors, c] : products) {
    if (factors.empty()) continue;  // constant, already taken from the table
    std::vector<std::size_t> creation;
    std::vector<std::size_t> annihilation;
    for (const Ladder& l : factors) {
      (l.kind == LadderKind::creation ? creation : annihilation).push_back(l.mode);
    }
    if (creation == annihilation) {
      if (std::abs(c.imag()) > 1e-10) {
        throw NonHermitianError(fmt::format("diagonal product has complex weight {}+{}i",
                                            c.real(), c.imag()));
      }
      // Self-adjoint A: c A = (c / 2) G~.
      const double w = 0.5 * c.real();
      if (std::abs(w) <= drop) continue;
      if (creation.size() == 1) {
        out.local.push_back(LocalTerm::density(creation[0], w));
      } else if (creation.size() == 2) {
        out.local.push_back(LocalTerm::coulomb(creation[0], creation[1], w));
      } else {
        throw StructuralError("diagonal product of order > 2");
      }
      continue;
    }
    // Each pair {A, A^dagger} is handled once, from its lexicographically smaller member.
    if (annihilation < creation) continue;
    const auto adj = products.find(ladder_factors(annihilation, creation));
    const std::complex<double> c_adj = adj == products.end() ? 0.0 : adj->second;
    if (std::abs(c_adj - std::conj(c)) > 1e-10) {
      throw NonHermitianError(
          fmt::format("ladder product a^dagger({}) a({}) lacks a matching adjoint",
                      fmt::join(creation, ","), fmt::join(annihilation, ",")));
    }
    // c A + conj(c) A^dagger = Re(c) G~ + Im(c) G
    if (std::abs(c.real()) > drop) {
      out.excitations.push_back(ExcitationTerm::from_ladder(creation, annihilation, true, c.real()));
    }
    if (std::abs(c.imag()) > drop) {
      out.excitations.push_back(
          ExcitationTerm::from_ladder(creation, annihilation, false, c.imag()));
    }
  }
  sort_terms(out);
  return out;
}

HamiltonianTermList h3plus_builtin() {
  // Spin orbitals: alpha_k -> 2k, beta_k -> 2k + 1.
  constexpr std::size_t a0 = 0, b0 = 1, a1 = 2, b1 = 3, a2 = 4, b2 = 5;
  HamiltonianTermList h;
  h.n_modes = 6;
  h.reality = Reality::real;

  for (std::size_t m : {a0, b0}) h.local.push_back(LocalTerm::density(m, -0.917));
  for (std::size_t m : {a1, a2, b1, b2}) h.local.push_back(LocalTerm::density(m, -0.535));
  const std::vector<std::tuple<std::size_t, std::size_t, double>> coulomb{
      {a1, b1, -0.337}, {a2, b2, -0.337}, {a0, b0, -0.307}, {a0, b2, -0.298},
      {a2, b0, -0.298}, {a0, b1, -0.298}, {a1, b0, -0.298}, {a1, b2, -0.265},
      {a2, b1, -0.265}, {a1, a2, -0.229}, {b1, b2, -0.229}, {a0, a1, -0.226},
      {a0, a2, -0.226}, {b0, b1, -0.226}, {b0, b2, -0.226}};
  for (const auto& [p, q, w] : coulomb) h.local.push_back(LocalTerm::coulomb(p, q, w));

  // G~ with creation (c0, c1) and annihilation (d0, d1), in the listed operator order.
  struct Listed {
    std::size_t c0, c1, d0, d1;
    double w;
  };
  const std::vector<Listed> nonlocal{
      {a0, b0, a1, b1, -0.142}, {a0, b1, a1, b0, -0.142}, {a0, b0, a2, b2, -0.142},
      {a0, b2, a2, b0, -0.142}, {a0, b1, a1, b1, -0.090}, {a1, b0, a1, b1, -0.090},
      {a0, b2, a1, b2, +0.090}, {a2, b0, a2, b1, +0.090}, {a0, b1, a2, b2, +0.090},
      {a0, b2, a2, b1, +0.090}, {a1, b0, a2, b2, +0.090}, {a1, b2, a2, b0, +0.090},
      {a1, b1, a2, b2, -0.072}, {a1, b2, a2, b1, -0.072}};
  for (const auto& t : nonlocal) {
    h.excitations.push_back(ExcitationTerm::from_ladder({t.c0, t.c1}, {t.d0, t.d1}, true, t.w));
  }
  sort_terms(h);
  return h;
}

}  // namespace msfermion
