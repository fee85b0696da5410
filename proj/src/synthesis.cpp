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

#include "msfermion/synthesis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

#include "msfermion/errors.hpp"

namespace msfermion {

namespace {

constexpr Pauli kLetters[] = {Pauli::X, Pauli::Y, Pauli::Z};

Pauli axis_letter(MsAxis axis) { return axis == MsAxis::xx ? Pauli::X : Pauli::Y; }

// Letter that the forward MS maps to Z when it sits alone among axis letters.
Pauli rotated_letter(MsAxis axis, std::size_t n) {
  if (n % 2 == 1) return Pauli::Z;
  return axis == MsAxis::xx ? Pauli::Y : Pauli::X;
}

PauliString strip_phase(const PauliString& p) { return p.with_phase(Phase::one); }

Pauli image_letter(Pauli from, const std::vector<Clifford1>& seq) {
  PauliString s = PauliString::single(1, 0, from);
  for (Clifford1 g : seq) s = conjugate_by_clifford1(s, g, 0);
  return s.letter(0);
}

// Shortest sequence over {h, s, sdg, sx, sxdg} taking b -> a and (if given) f -> r, up to sign.
std::vector<Clifford1> find_dressing(Pauli b, Pauli a, std::optional<std::pair<Pauli, Pauli>> fr) {
  static constexpr Clifford1 kGen[] = {Clifford1::h, Clifford1::s, Clifford1::sdg, Clifford1::sx,
                                       Clifford1::sxdg};
  auto ok = [&](const std::vector<Clifford1>& seq) {
    if (image_letter(b, seq) != a) return false;
    return !fr || image_letter(fr->first, seq) == fr->second;
  };
  if (ok({})) return {};
  for (Clifford1 g1 : kGen) {
    if (ok({g1})) return {g1};
  }
  for (Clifford1 g1 : kGen) {
    for (Clifford1 g2 : kGen) {
      if (ok({g1, g2})) return {g1, g2};
    }
  }
  for (Clifford1 g1 : kGen) {
    for (Clifford1 g2 : kGen) {
      for (Clifford1 g3 : kGen) {
        if (ok({g1, g2, g3})) return {g1, g2, g3};
      }
    }
  }
  throw std::logic_error("no local Clifford dressing found");
}

struct Group {
  std::uint64_t support = 0;
  std::vector<PauliString> strings;
};

using Base = std::vector<Pauli>;  // letter per varying column

// Number of columns where `s` differs from `base`.
std::size_t distance(const PauliString& s, const std::vector<std::size_t>& cols, const Base& base) {
  std::size_t d = 0;
  for (std::size_t i = 0; i < cols.size(); ++i) d += s.letter(cols[i]) != base[i];
  return d;
}

class CoverSearch {
 public:
  CoverSearch(std::size_t n_strings, std::vector<std::vector<std::size_t>> covers_of_string,
              std::vector<std::uint64_t> cover_masks, std::size_t max_per_base)
      : n_(n_strings),
        covers_of_string_(std::move(covers_of_string)),
        cover_masks_(std::move(cover_masks)),
        max_per_base_(std::max<std::size_t>(max_per_base, 1)) {}

  std::vector<std::size_t> solve() {
    const std::uint64_t all = n_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1;
    for (std::size_t depth = (n_ + max_per_base_ - 1) / max_per_base_;; ++depth) {
      chosen_.clear();
      if (dfs(0, all, depth)) return chosen_;
    }
  }

 private:
  bool dfs(std::uint64_t covered, std::uint64_t all, std::size_t depth) {
    if (covered == all) return true;
    const auto remaining = static_cast<std::size_t>(std::popcount(all & ~covered));
    if (remaining > depth * max_per_base_) return false;
    const auto first = static_cast<std::size_t>(std::countr_zero(all & ~covered));
    for (std::size_t c : covers_of_string_[first]) {
      chosen_.push_back(c);
      if (dfs(covered | cover_masks_[c], all, depth - 1)) return true;
      chosen_.pop_back();
    }
    return false;
  }

  std::size_t n_;
  std::vector<std::vector<std::size_t>> covers_of_string_;
  std::vector<std::uint64_t> cover_masks_;
  std::size_t max_per_base_;
  std::vector<std::size_t> chosen_;
};

SynthesisPlan make_plan(const Group& g, const std::vector<std::size_t>& cols, const Base& base,
                        const std::vector<PauliString>& strings, MsAxis axis) {
  SynthesisPlan plan;
  for (std::uint64_t m = g.support; m != 0; m &= m - 1) {
    plan.ms_qubits.push_back(static_cast<std::size_t>(std::countr_zero(m)));
  }
  plan.axis = axis;
  const std::size_t n = plan.ms_qubits.size();
  plan.parity_m = n / 2;
  plan.strings = strings;
  const Pauli a = axis_letter(axis);
  const Pauli r = rotated_letter(axis, n);
  const PauliString& ref = g.strings.front();
  for (std::size_t q : plan.ms_qubits) {
    auto col = std::find(cols.begin(), cols.end(), q);
    std::vector<Clifford1> seq;
    if (col == cols.end()) {
      seq = find_dressing(ref.letter(q), a, std::nullopt);
    } else {
      const Pauli b = base[static_cast<std::size_t>(col - cols.begin())];
      std::optional<Pauli> f;
      for (const auto& s : strings) {
        const Pauli l = s.letter(q);
        if (l == b) continue;
        if (f && *f != l) {
          throw StructuralError(fmt::format(
              "strings flip qubit {} to different letters inside one MS layer", q));
        }
        f = l;
      }
      if (!f) {
        // Nothing flips here; pick another letter so the dressing stays a fixed choice.
        for (const auto& s : g.strings) {
          if (s.letter(q) != b) {
            f = s.letter(q);
            break;
          }
        }
      }
      if (!f) f = b == Pauli::X ? Pauli::Y : Pauli::X;
      seq = find_dressing(b, a, std::make_pair(*f, r));
    }
    for (Clifford1 c : seq) plan.dressing.emplace_back(q, c);
  }
  return plan;
}

std::vector<Base> candidate_bases(const std::vector<std::vector<Pauli>>& observed,
                                  MsAxis preferred) {
  std::vector<Base> out;
  Base cur(observed.size());
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == observed.size()) {
      out.push_back(cur);
      return;
    }
    for (Pauli l : observed[i]) {
      cur[i] = l;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  const Pauli first = axis_letter(preferred);
  const Pauli second = first == Pauli::X ? Pauli::Y : Pauli::X;
  auto rank = [&](const Base& b) {
    if (std::all_of(b.begin(), b.end(), [&](Pauli l) { return l == first; })) return 0;
    if (std::all_of(b.begin(), b.end(), [&](Pauli l) { return l == second; })) return 1;
    return 2;
  };
  std::stable_sort(out.begin(), out.end(),
                   [&](const Base& x, const Base& y) { return rank(x) < rank(y); });
  return out;
}

MsAxis axis_for_base(const Base& base, MsAxis preferred) {
  if (!base.empty() && std::all_of(base.begin(), base.end(), [](Pauli l) { return l == Pauli::X; }))
    return MsAxis::xx;
  if (!base.empty() && std::all_of(base.begin(), base.end(), [](Pauli l) { return l == Pauli::Y; }))
    return MsAxis::yy;
  return preferred;
}

void plan_group(const Group& g, MsAxis preferred, bool allow_multi_z,
                std::vector<SynthesisPlan>& out) {
  std::vector<std::size_t> cols;
  std::vector<std::vector<Pauli>> observed;
  for (std::uint64_t m = g.support; m != 0; m &= m - 1) {
    const auto q = static_cast<std::size_t>(std::countr_zero(m));
    std::vector<Pauli> seen;
    for (const auto& s : g.strings) {
      const Pauli l = s.letter(q);
      if (std::find(seen.begin(), seen.end(), l) == seen.end()) seen.push_back(l);
    }
    if (seen.size() > 1) {
      std::sort(seen.begin(), seen.end(), [](Pauli x, Pauli y) {
        return to_char(x) < to_char(y);
      });
      cols.push_back(q);
      observed.push_back(seen);
    }
  }

  if (cols.empty()) {
    // A lone string: flip its lowest qubit against an arbitrary base letter.
    const PauliString& s = g.strings.front();
    const std::size_t q = static_cast<std::size_t>(std::countr_zero(g.support));
    const Pauli l = s.letter(q);
    const Base base{l == Pauli::X ? Pauli::Y : Pauli::X};
    out.push_back(make_plan(g, {q}, base, g.strings, preferred));
    return;
  }

  if (allow_multi_z) {
    Base base;
    for (const auto& obs : observed) {
      base.push_back(std::find(obs.begin(), obs.end(), Pauli::X) != obs.end() ? Pauli::X
                                                                               : obs.front());
    }
    out.push_back(make_plan(g, cols, base, g.strings, axis_for_base(base, preferred)));
    return;
  }

  const std::vector<Base> candidates = candidate_bases(observed, preferred);
  const std::size_t m = g.strings.size();
  std::vector<std::size_t> chosen;
  if (m <= 64) {
    std::vector<std::uint64_t> masks(candidates.size(), 0);
    std::vector<std::vector<std::size_t>> covers(m);
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      for (std::size_t i = 0; i < m; ++i) {
        if (distance(g.strings[i], cols, candidates[c]) == 1) {
          masks[c] |= std::uint64_t{1} << i;
          covers[i].push_back(c);
        }
      }
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (covers[i].empty()) throw std::logic_error("string not coverable by any base");
    }
    chosen = CoverSearch(m, std::move(covers), std::move(masks), cols.size()).solve();
  } else {
    std::vector<bool> covered(m, false);
    std::size_t left = m;
    while (left > 0) {
      std::size_t best = 0;
      std::size_t best_gain = 0;
      for (std::size_t c = 0; c < candidates.size(); ++c) {
        std::size_t gain = 0;
        for (std::size_t i = 0; i < m; ++i) {
          if (!covered[i] && distance(g.strings[i], cols, candidates[c]) == 1) ++gain;
        }
        if (gain > best_gain) {
          best = c;
          best_gain = gain;
        }
      }
      if (best_gain == 0) throw std::logic_error("string not coverable by any base");
      chosen.push_back(best);
      for (std::size_t i = 0; i < m; ++i) {
        if (!covered[i] && distance(g.strings[i], cols, candidates[best]) == 1) {
          covered[i] = true;
          --left;
        }
      }
    }
  }

  std::vector<bool> assigned(m, false);
  for (std::size_t c : chosen) {
    std::vector<PauliString> mine;
    for (std::size_t i = 0; i < m; ++i) {
      if (!assigned[i] && distance(g.strings[i], cols, candidates[c]) == 1) {
        assigned[i] = true;
        mine.push_back(g.strings[i]);
      }
    }
    if (mine.empty()) continue;
    out.push_back(make_plan(g, cols, candidates[c], mine, axis_for_base(candidates[c], preferred)));
  }
}

std::size_t width_for(std::size_t requested, std::size_t max_mode) {
  return std::max(requested, max_mode + 1);
}

// Rotations for every structure string with the coefficient `sum` assigns to it (possibly zero).
std::vector<RotationTarget> targets_from(const std::vector<PauliString>& structure,
                                         const PauliSum& sum, double scale,
                                         std::optional<std::size_t> control = std::nullopt) {
  std::vector<RotationTarget> out;
  for (const auto& s : structure) {
    out.push_back({s, scale * sum.coefficient(s).real(), control});
  }
  return out;
}

std::vector<PauliString> letters_of(const PauliSum& s) {
  std::vector<PauliString> out;
  for (const auto& t : s.terms()) out.push_back(t.string);
  return out;
}

PauliSum drop_qubit_z(const PauliSum& s, std::size_t j) {
  PauliSum out(s.width());
  for (const auto& t : s.terms()) {
    if (t.string.letter(j) != Pauli::Z) throw std::logic_error("expected Z on the control");
    PauliString u = t.string;
    u.set_letter(j, Pauli::I);
    out.add(u, t.coefficient);
  }
  return out;
}

Circuit compile_sum(const PauliSum& weighted, double scale, std::size_t n, MsAxis preferred,
                    bool allow_multi_z = false) {
  const auto structure = letters_of(weighted);
  Circuit c(n);
  c.append(emit_layers(plan_layers(structure, preferred, allow_multi_z),
                       targets_from(structure, weighted, scale), n));
  return c;
}

void wrap_phase_gate(Circuit& c, std::size_t p) {
  Circuit out(c.n_qubits());
  out.append(Gate::single(Clifford1::s, p));
  out.append(c);
  out.append(Gate::single(Clifford1::sdg, p));
  for (const auto& [k, v] : c.metadata()) out.set_meta(k, v);
  c = std::move(out);
}

}  // namespace

std::vector<SynthesisPlan> plan_layers(const std::vector<PauliString>& structure,
                                       MsAxis preferred, bool allow_multi_z) {
  std::vector<Group> groups;
  for (const auto& raw : structure) {
    if (raw.is_identity()) throw StructuralError("cannot frame the identity string");
    const PauliString s = strip_phase(raw);
    auto it = std::find_if(groups.begin(), groups.end(),
                           [&](const Group& g) { return g.support == s.support_mask(); });
    if (it == groups.end()) {
      groups.push_back({s.support_mask(), {s}});
      continue;
    }
    if (std::none_of(it->strings.begin(), it->strings.end(),
                     [&](const PauliString& t) { return t.same_letters(s); })) {
      it->strings.push_back(s);
    }
  }
  for (std::size_t i = 0; i < groups.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      for (const auto& a : groups[i].strings) {
        for (const auto& b : groups[j].strings) {
          if (!a.commutes_with(b)) {
            throw StructuralError(fmt::format("strings {} and {} do not commute", a.str(), b.str()));
          }
        }
      }
    }
  }
  std::vector<SynthesisPlan> out;
  for (const auto& g : groups) plan_group(g, preferred, allow_multi_z, out);
  return out;
}

Circuit emit_layers(const std::vector<SynthesisPlan>& plans,
                    const std::vector<RotationTarget>& targets, std::size_t n_qubits) {
  Circuit c(n_qubits);
  std::vector<bool> used(targets.size(), false);
  for (const auto& plan : plans) {
    for (const auto& [q, g] : plan.dressing) c.append(Gate::single(g, q));
    const bool entangling = plan.ms_qubits.size() > 1;
    if (entangling) c.append(Gate::ms(plan.axis, MsDirection::forward, plan.ms_qubits));
    for (std::size_t t = 0; t < targets.size(); ++t) {
      if (used[t]) continue;
      const RotationTarget& target = targets[t];
      const bool mine = std::any_of(plan.strings.begin(), plan.strings.end(),
                                    [&](const PauliString& s) { return s.same_letters(target.string); });
      if (!mine) continue;
      used[t] = true;
      if (target.string.phase() == Phase::i || target.string.phase() == Phase::minus_i) {
        throw StructuralError("rotation string must be Hermitian");
      }
      PauliString img = target.string;
      for (const auto& [q, g] : plan.dressing) img = conjugate_by_clifford1(img, g, q);
      if (entangling) img = conjugate_by_ms(img, plan.axis, plan.ms_qubits);
      if (img.x_mask() != 0) throw std::logic_error("layer frame does not diagonalize a string");
      const double sign = img.phase() == Phase::one ? 1.0 : -1.0;
      const double angle = 2.0 * target.angle * sign;
      const auto zs = img.support();
      if (target.control) {
        for (std::size_t z : zs) {
          if (z == *target.control) throw StructuralError("control qubit inside a rotation");
        }
      }
      const std::size_t tgt = zs.back();
      for (std::size_t i = 0; i + 1 < zs.size(); ++i) c.append(Gate::cnot(zs[i], tgt));
      if (target.control) {
        c.append(Gate::crz(*target.control, tgt, angle));
      } else {
        c.append(Gate::rz(tgt, angle));
      }
      for (std::size_t i = zs.size() - 1; i-- > 0;) c.append(Gate::cnot(zs[i], tgt));
    }
    if (entangling) c.append(Gate::ms(plan.axis, MsDirection::backward, plan.ms_qubits));
    for (auto it = plan.dressing.rbegin(); it != plan.dressing.rend(); ++it) {
      c.append(Gate::single(inverse(it->second), it->first));
    }
  }
  for (std::size_t t = 0; t < targets.size(); ++t) {
    if (!used[t]) {
      throw StructuralError(
          fmt::format("rotation string {} is not covered by any layer", targets[t].string.str()));
    }
  }
  return c;
}

Circuit compile_pauli_rotation(const PauliString& p, double phi) {
  if (p.is_identity()) {
    throw StructuralError("identity rotation is a global phase; emit GlobalPhase explicitly");
  }
  return emit_layers(plan_layers({p}), {{p, phi / 2.0, std::nullopt}}, p.width());
}

Circuit compile_controlled_pauli_rotation(const PauliString& p, double phi, std::size_t control) {
  if (p.is_identity()) throw StructuralError("identity rotation cannot be controlled here");
  if (control >= p.width() || p.letter(control) != Pauli::I) {
    throw StructuralError(fmt::format("control {} must be an idle qubit of {}", control, p.str()));
  }
  return emit_layers(plan_layers({p}), {{p, phi / 2.0, control}}, p.width());
}

Circuit compile_single_excitation(std::size_t p, std::size_t q, double theta, MsAxis axis,
                                  std::size_t n_qubits) {
  const ExcitationTerm t = ExcitationTerm::single(p, q);
  const std::size_t n = width_for(n_qubits, q);
  Circuit c = compile_sum(generator_pauli(t, n), theta, n, axis);
  c.set_meta("op", "single");
  return c;
}

Circuit compile_double_block(std::size_t p, std::size_t q, std::size_t r, std::size_t s,
                             const std::array<double, 3>& angles, std::size_t n_qubits) {
  const std::size_t n = width_for(n_qubits, s);
  const ExcitationTerm base = ExcitationTerm::double_excitation(p, q, r, s);
  const ExcitationTerm pr = ExcitationTerm::from_ladder({p, r}, {q, s}, false);
  const ExcitationTerm ps = ExcitationTerm::from_ladder({p, s}, {q, r}, false);
  const auto structure = letters_of(generator_pauli(base, n));
  PauliSum sum = weighted_pauli(base, n) * std::complex<double>(angles[0]);
  sum += weighted_pauli(pr, n) * std::complex<double>(angles[1]);
  sum += weighted_pauli(ps, n) * std::complex<double>(angles[2]);
  Circuit c(n);
  c.append(emit_layers(plan_layers(structure), targets_from(structure, sum, 1.0), n));
  c.set_meta("op", "double");
  return c;
}

Circuit compile_coupled_exchange(std::size_t p, std::size_t q, std::size_t r, std::size_t s,
                                 double theta, std::size_t n_qubits) {
  const std::size_t n = width_for(n_qubits, s);
  const ExcitationTerm a = ExcitationTerm::double_excitation(p, q, r, s);
  const ExcitationTerm b = ExcitationTerm::from_ladder({p, s}, {r, q}, false);
  const PauliSum sum = weighted_pauli(a, n) + weighted_pauli(b, n);
  Circuit c = compile_sum(sum, theta, n, MsAxis::xx);
  c.set_meta("op", "coupled");
  return c;
}

Circuit compile_controlled_single(std::size_t p, std::size_t q, std::size_t j, double theta,
                                  ControlledVariant variant, std::size_t n_qubits) {
  ExcitationTerm::controlled_single(p, q, j);  // validates p < q and j
  const std::size_t n = width_for(n_qubits, std::max(q, j));
  const PauliSum core = generator_pauli(ExcitationTerm::single(p, q), n);
  Circuit c(n);
  if (variant == ControlledVariant::a) {
    // exp(i theta n_j G) acts as exp(i theta G) on the j = 1 subspace. Inside the
    // parity window Z_j = -1 there, which flips the sign and drops j from the strings.
    const bool inside = p < j && j < q;
    const PauliSum strings = inside ? drop_qubit_z(core, j) : core;
    const auto structure = letters_of(strings);
    c.append(emit_layers(plan_layers(structure),
                         targets_from(structure, strings, inside ? theta : -theta, j), n));
  } else {
    PauliSum zj = PauliSum::from_string(PauliString::single(n, j, Pauli::Z));
    const PauliSum sum = core * std::complex<double>(-0.5) + (zj * core) * std::complex<double>(0.5);
    std::vector<PauliString> structure = letters_of(core);
    for (const auto& s : letters_of(zj * core)) structure.push_back(s);
    c.append(emit_layers(plan_layers(structure), targets_from(structure, sum, theta), n));
  }
  c.set_meta("op", "controlled");
  return c;
}

Circuit compile_fused_controlled_single(std::size_t p, std::size_t q,
                                        const std::vector<std::pair<std::size_t, double>>& controls,
                                        std::size_t n_qubits) {
  if (controls.empty()) throw StructuralError("fused controlled single needs a control");
  std::size_t top = q;
  for (const auto& [j, angle] : controls) {
    ExcitationTerm::controlled_single(p, q, j);  // validates
    if (p < j && j < q) {
      throw StructuralError(
          fmt::format("control {} lies inside ({}, {}) and cannot share the MS frame", j, p, q));
    }
    top = std::max(top, j);
  }
  const std::size_t n = width_for(n_qubits, top);
  const PauliSum core = generator_pauli(ExcitationTerm::single(p, q), n);
  const auto structure = letters_of(core);
  std::vector<RotationTarget> targets;
  for (const auto& s : structure) {
    for (const auto& [j, angle] : controls) {
      targets.push_back({s, -angle * core.coefficient(s).real(), j});
    }
  }
  Circuit c(n);
  c.append(emit_layers(plan_layers(structure), targets, n));
  c.set_meta("op", "controlled");
  return c;
}

Circuit compile_higher_excitation(const ExcitationTerm& t, double theta, std::size_t n_qubits) {
  if (t.kind == ExcitationKind::controlled_single) {
    throw StructuralError("controlled singles are not higher-order excitations");
  }
  if (t.symmetrized) throw StructuralError("use compile_symmetrized for G~ terms");
  const std::size_t n = width_for(n_qubits, t.max_mode());
  Circuit c = compile_sum(generator_pauli(t, n), theta * t.coefficient, n, MsAxis::xx);
  c.set_meta("op", "higher");
  return c;
}

Circuit compile_symmetrized(const ExcitationTerm& t, double theta, std::size_t n_qubits,
                            ControlledVariant variant) {
  if (!t.symmetrized) throw StructuralError("compile_symmetrized needs a symmetrized term");
  ExcitationTerm anti = t;
  anti.symmetrized = false;
  const std::size_t p = t.creation.front();
  // exp(-i pi/2 n_p) = S^dagger on qubit p maps G to +G~ because p is a creation mode.
  const int sign = local_equivalence_conjugate(anti, p).second;
  Circuit c = compile_excitation(anti, theta * sign, n_qubits, variant);
  wrap_phase_gate(c, p);
  return c;
}

Circuit compile_excitation(const ExcitationTerm& t, double theta, std::size_t n_qubits,
                           ControlledVariant variant) {
  if (t.symmetrized) return compile_symmetrized(t, theta, n_qubits, variant);
  const double angle = theta * t.coefficient;
  switch (t.kind) {
    case ExcitationKind::single:
      return compile_single_excitation(t.creation[0], t.annihilation[0], angle, MsAxis::xx,
                                       n_qubits);
    case ExcitationKind::double_excitation: {
      std::array<std::size_t, 4> quad{t.creation[0], t.creation[1], t.annihilation[0],
                                      t.annihilation[1]};
      std::sort(quad.begin(), quad.end());
      std::array<double, 3> angles{0.0, 0.0, 0.0};
      const std::size_t partner = t.creation[1];
      if (partner == quad[1]) {
        angles[0] = angle;
      } else if (partner == quad[2]) {
        angles[1] = angle;
      } else {
        angles[2] = angle;
      }
      return compile_double_block(quad[0], quad[1], quad[2], quad[3], angles, n_qubits);
    }
    case ExcitationKind::controlled_single:
      return compile_controlled_single(t.creation[0], t.annihilation[0], t.control, angle,
                                       variant, n_qubits);
    case ExcitationKind::higher: return compile_higher_excitation(t, theta, n_qubits);
  }
  throw std::logic_error("unknown excitation kind");
}

Circuit baseline_string_by_string(const ExcitationTerm& t, double theta, std::size_t n_qubits,
                                  bool controlled_core) {
  const std::size_t n = width_for(n_qubits, t.max_mode());
  Circuit c(n);
  if (controlled_core && t.kind == ExcitationKind::controlled_single) {
    const std::size_t p = t.creation[0];
    const std::size_t q = t.annihilation[0];
    const std::size_t j = t.control;
    ExcitationTerm core = ExcitationTerm::single(p, q, t.symmetrized);
    const bool inside = p < j && j < q;
    PauliSum strings = generator_pauli(core, n);
    if (inside) strings = drop_qubit_z(strings, j);
    const double scale = (inside ? 1.0 : -1.0) * theta * t.coefficient;
    for (const auto& term : strings.terms()) {
      c.append(compile_controlled_pauli_rotation(term.string, 2.0 * scale * term.coefficient.real(),
                                                 j));
    }
  } else {
    for (const auto& term : weighted_pauli(t, n).terms()) {
      c.append(compile_pauli_rotation(term.string, 2.0 * theta * term.coefficient.real()));
    }
  }
  c.set_meta("op", "baseline");
  return c;
}

Circuit compile_mixed_cnot(std::size_t p, std::size_t q, std::size_t r, std::size_t s,
                           double theta, std::size_t n_qubits) {
  const std::size_t n = width_for(n_qubits, s);
  const ExcitationTerm t = ExcitationTerm::double_excitation(p, q, r, s);
  Circuit c = compile_sum(generator_pauli(t, n), theta, n, MsAxis::xx, true);
  c.set_meta("op", "mixed");
  return c;
}

BackwardMsIdentity backward_ms_identity(std::size_t n) {
  if (n == 0) throw StructuralError("MS gate needs at least one qubit");
  const double pi = std::numbers::pi;
  if (n % 2 == 0) {
    const double sign = (n / 2) % 2 == 0 ? 1.0 : -1.0;
    return {true, sign * std::polar(1.0, pi * static_cast<double>(n) / 4.0)};
  }
  return {false, std::polar(1.0, pi * static_cast<double>(n - 1) / 4.0)};
}

Circuit eliminate_backward_ms(const Circuit& c) {
  Circuit out(c.n_qubits());
  for (const auto& [k, v] : c.metadata()) out.set_meta(k, v);
  for (const Gate& g : c.gates()) {
    if (!g.is_ms() || g.direction == MsDirection::forward) {
      out.append(g);
      continue;
    }
    // MS^2 = phase * P, so MS^dagger = conj(phase) * MS * P.
    const BackwardMsIdentity id = backward_ms_identity(g.qubits.size());
    if (id.needs_pauli) {
      const Clifford1 pauli = g.axis == MsAxis::xx ? Clifford1::x : Clifford1::y;
      for (std::size_t q : g.qubits) out.append(Gate::single(pauli, q));
    }
    out.append(Gate::ms(g.axis, MsDirection::forward, g.qubits));
    const double phase = -std::arg(id.phase);
    if (phase != 0.0) out.append(Gate::global_phase(phase));
  }
  return out;
}

std::size_t higher_excitation_ms_formula(std::size_t order) {
  if (order == 0) throw StructuralError("excitation order must be positive");
  const std::size_t strings = std::size_t{1} << (2 * order - 2);
  return 2 * ((strings + order - 1) / order);
}

}  // namespace msfermion
