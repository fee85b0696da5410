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

#include "msfermion/trotter.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <tuple>

#include <fmt/format.h>

#include "msfermion/dense.hpp"
#include "msfermion/errors.hpp"
#include "msfermion/synthesis.hpp"

namespace msfermion {

namespace {

void check_modes(const std::vector<std::size_t>& modes, std::size_t n_modes, const char* what) {
  for (std::size_t m : modes) {
    if (m >= n_modes) {
      throw StructuralError(fmt::format("{} mode {} outside {} modes", what, m, n_modes));
    }
  }
}

std::array<std::size_t, 4> sorted_quad(const ExcitationTerm& t) {
  std::array<std::size_t, 4> q{t.creation[0], t.creation[1], t.annihilation[0],
                               t.annihilation[1]};
  std::sort(q.begin(), q.end());
  return q;
}

bool inside_window(const ExcitationTerm& t) {
  return t.creation[0] < t.control && t.control < t.annihilation[0];
}

// S first in time on qubit p, then the block, then S^dagger.
Circuit wrap_with_phase(const Circuit& body, std::size_t p) {
  Circuit out(body.n_qubits());
  out.append(Gate::single(Clifford1::s, p));
  out.append(body);
  out.append(Gate::single(Clifford1::sdg, p));
  return out;
}

// Rotation angle for the antisymmetrized image of `t` under the phase gate on p.
double antisymmetric_angle(const ExcitationTerm& t, std::size_t p, double dt) {
  if (!t.symmetrized) return dt * t.coefficient;
  ExcitationTerm anti = t;
  anti.symmetrized = false;
  const int sign = local_equivalence_conjugate(anti, p).second;
  return dt * t.coefficient * sign;
}

Circuit lower_partners(const ScheduledBlock& b, double dt, std::size_t n) {
  const auto quad = sorted_quad(b.terms.front());
  std::array<double, 3> angles{0.0, 0.0, 0.0};
  for (const auto& t : b.terms) {
    // Canonical doubles all start with creation quad[0]; creation[1] picks the slot.
    const std::size_t slot = t.creation[1] == quad[1] ? 0 : (t.creation[1] == quad[2] ? 1 : 2);
    angles[slot] += antisymmetric_angle(t, quad[0], dt);
  }
  Circuit body = compile_double_block(quad[0], quad[1], quad[2], quad[3], angles, n);
  return b.terms.front().symmetrized ? wrap_with_phase(body, quad[0]) : body;
}

Circuit lower_shared_core(const ScheduledBlock& b, double dt, std::size_t n) {
  const ExcitationTerm& first = b.terms.front();
  const std::size_t p = first.creation[0];
  const std::size_t q = first.annihilation[0];
  std::vector<std::pair<std::size_t, double>> controls;
  for (const auto& t : b.terms) controls.emplace_back(t.control, antisymmetric_angle(t, p, dt));
  Circuit body = compile_fused_controlled_single(p, q, controls, n);
  return first.symmetrized ? wrap_with_phase(body, p) : body;
}

// One MS pair per string of the block's combined generator; controlled
// singles keep their control as CRz.
Circuit lower_strings(const ScheduledBlock& b, double dt, std::size_t n) {
  Circuit c(n);
  if (b.terms.front().kind == ExcitationKind::controlled_single) {
    for (const auto& t : b.terms) c.append(baseline_string_by_string(t, dt, n, true));
    return c;
  }
  PauliSum sum(n);
  for (const auto& t : b.terms) sum += weighted_pauli(t, n);
  for (const auto& term : sum.terms()) {
    c.append(compile_pauli_rotation(term.string, 2.0 * dt * term.coefficient.real()));
  }
  return c;
}

}  // namespace

std::vector<ExcitationTerm> uccsd_excitations(const AnsatzSpec& spec) {
  check_modes(spec.occupied, spec.n_modes, "occupied");
  check_modes(spec.virt, spec.n_modes, "virtual");
  std::vector<std::size_t> occ = spec.occupied;
  std::vector<std::size_t> virt = spec.virt;
  std::sort(occ.begin(), occ.end());
  std::sort(virt.begin(), virt.end());
  if (std::adjacent_find(occ.begin(), occ.end()) != occ.end() ||
      std::adjacent_find(virt.begin(), virt.end()) != virt.end()) {
    throw StructuralError("repeated mode in the occupied or virtual list");
  }
  for (std::size_t m : occ) {
    if (std::binary_search(virt.begin(), virt.end(), m)) {
      throw StructuralError(fmt::format("mode {} is both occupied and virtual", m));
    }
  }
  std::vector<ExcitationTerm> out;
  for (std::size_t p : occ) {
    for (std::size_t q : virt) {
      if (spin_of(p) == spin_of(q)) out.push_back(ExcitationTerm::from_ladder({p}, {q}, false));
    }
  }
  for (std::size_t i = 0; i < occ.size(); ++i) {
    for (std::size_t j = i + 1; j < occ.size(); ++j) {
      for (std::size_t k = 0; k < virt.size(); ++k) {
        for (std::size_t l = k + 1; l < virt.size(); ++l) {
          const std::size_t p = occ[i], q = occ[j], r = virt[k], s = virt[l];
          std::array<std::size_t, 2> from{spin_of(p), spin_of(q)};
          std::array<std::size_t, 2> to{spin_of(r), spin_of(s)};
          std::sort(from.begin(), from.end());
          std::sort(to.begin(), to.end());
          if (from != to) continue;
          out.push_back(ExcitationTerm::from_ladder({p, q}, {r, s}, false));
        }
      }
    }
  }
  return out;
}

namespace {

std::vector<ExcitationTerm> weighted_excitations(const AnsatzSpec& spec) {
  auto ex = uccsd_excitations(spec);
  if (spec.theta.size() != ex.size()) {
    throw StructuralError(fmt::format("ansatz has {} excitations but {} parameters", ex.size(),
                                      spec.theta.size()));
  }
  for (std::size_t k = 0; k < ex.size(); ++k) {
    ex[k] = ex[k].with_coefficient(ex[k].coefficient * spec.theta[k]);
  }
  return ex;
}

}  // namespace

Circuit build_uccsd_layer(const AnsatzSpec& spec) {
  Circuit c(spec.n_modes);
  for (const auto& t : weighted_excitations(spec)) c.append(compile_excitation(t, 1.0, spec.n_modes));
  c.set_meta("op", "uccsd");
  return c;
}

Circuit build_uccsd_baseline(const AnsatzSpec& spec) {
  Circuit c(spec.n_modes);
  for (const auto& t : weighted_excitations(spec)) {
    c.append(baseline_string_by_string(t, 1.0, spec.n_modes));
  }
  c.set_meta("op", "uccsd-baseline");
  return c;
}

Circuit prepare_reference(const std::vector<std::size_t>& occupied, std::size_t n_modes) {
  check_modes(occupied, n_modes, "occupied");
  Circuit c(n_modes);
  for (std::size_t m : occupied) c.append(Gate::single(Clifford1::x, m));
  c.set_meta("op", "reference");
  return c;
}

const char* scheduling_name(Scheduling s) {
  switch (s) {
    case Scheduling::parallelized: return "parallelized";
    case Scheduling::string_by_string: return "string-by-string";
    case Scheduling::naive: return "naive";
  }
  return "?";
}

std::vector<ScheduledBlock> schedule_terms(const std::vector<ExcitationTerm>& terms) {
  std::vector<ScheduledBlock> blocks;
  // Fusion key -> block index.
  std::map<std::vector<std::size_t>, std::size_t> open;
  for (const auto& t : terms) {
    std::vector<std::size_t> key;
    ScheduledBlock::Kind kind = ScheduledBlock::Kind::single_term;
    if (t.kind == ExcitationKind::double_excitation) {
      const auto q = sorted_quad(t);
      key = {0, q[0], q[1], q[2], q[3], t.symmetrized ? 1u : 0u};
      kind = ScheduledBlock::Kind::permutation_partners;
    } else if (t.kind == ExcitationKind::controlled_single && !inside_window(t)) {
      key = {1, t.creation[0], t.annihilation[0], t.symmetrized ? 1u : 0u};
      kind = ScheduledBlock::Kind::shared_core;
    }
    if (!key.empty()) {
      auto it = open.find(key);
      if (it != open.end()) {
        blocks[it->second].terms.push_back(t);
        continue;
      }
      open.emplace(key, blocks.size());
    }
    blocks.push_back({kind, {t}});
  }
  return blocks;
}

Circuit build_nonlocal_part(const std::vector<ScheduledBlock>& schedule, double dt,
                            std::size_t n_modes, Scheduling scheduling) {
  Circuit c(n_modes);
  for (const auto& b : schedule) {
    switch (scheduling) {
      case Scheduling::parallelized:
        if (b.kind == ScheduledBlock::Kind::permutation_partners) {
          c.append(lower_partners(b, dt, n_modes));
        } else if (b.kind == ScheduledBlock::Kind::shared_core) {
          c.append(lower_shared_core(b, dt, n_modes));
        } else {
          c.append(compile_excitation(b.terms.front(), dt, n_modes));
        }
        break;
      case Scheduling::string_by_string: c.append(lower_strings(b, dt, n_modes)); break;
      case Scheduling::naive:
        for (const auto& t : b.terms) c.append(baseline_string_by_string(t, dt, n_modes, true));
        break;
    }
  }
  return c;
}

TrotterStep build_trotter_step(const HamiltonianTermList& terms, const TrotterConfig& cfg) {
  if (!std::isfinite(cfg.dt)) throw StructuralError("time step must be finite");
  if (cfg.reality != terms.reality) {
    throw StructuralError(fmt::format("Trotter step configured for {} orbitals but the terms are {}",
                                      reality_name(cfg.reality), reality_name(terms.reality)));
  }
  const std::size_t n = terms.n_modes;
  const double dt = cfg.dt;
  TrotterStep step{Circuit(n), 0, schedule_terms(terms.excitations)};
  Circuit& c = step.circuit;
  if (terms.constant != 0.0) c.append(Gate::global_phase(-dt * terms.constant));
  for (const auto& t : terms.local) {
    const double w = t.coefficient;
    if (t.kind == LocalTerm::Kind::density) {
      // exp(-i dt w (I - Z_p))
      c.append(Gate::global_phase(-dt * w));
      c.append(Gate::rz(t.p, -2.0 * dt * w));
    } else {
      // exp(i dt w/2 (I - Z_p - Z_q + Z_p Z_q))
      c.append(Gate::global_phase(0.5 * dt * w));
      c.append(Gate::rz(t.p, dt * w));
      c.append(Gate::rz(t.q, dt * w));
      c.append(Gate::rzz(t.p, t.q, -dt * w));
    }
  }
  step.local_gate_count = c.size();
  c.append(build_nonlocal_part(step.schedule, dt, n, cfg.scheduling));
  c.set_meta("op", "trotter");
  c.set_meta("scheduling", scheduling_name(cfg.scheduling));
  return step;
}

std::vector<std::pair<double, double>> trotter_error_probe(const HamiltonianTermList& terms,
                                                           const std::vector<double>& dts,
                                                           Scheduling scheduling) {
  if (terms.n_modes > 10) {
    throw DimensionError(fmt::format("Trotter error probe supports at most 10 modes, got {}",
                                     terms.n_modes));
  }
  const PauliSum h = terms.pauli();
  std::vector<std::pair<double, double>> out;
  for (double dt : dts) {
    const TrotterStep step = build_trotter_step(terms, {dt, terms.reality, scheduling});
    const DenseOperator u = circuit_unitary(step.circuit);
    const DenseOperator exact = generator_unitary(h, dt);
    const DenseOperator diff = u - exact;
    out.emplace_back(dt, spectral_norm(diff));
  }
  return out;
}

double fitted_log_slope(const std::vector<std::pair<double, double>>& points) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t k = 0;
  for (const auto& [dt, err] : points) {
    if (dt <= 0.0 || err <= 0.0) continue;
    const double x = std::log(dt);
    const double y = std::log(err);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++k;
  }
  if (k < 2) throw StructuralError("slope fit needs two points with positive dt and error");
  const double kk = static_cast<double>(k);
  return (kk * sxy - sx * sy) / (kk * sxx - sx * sx);
}

}  // namespace msfermion
