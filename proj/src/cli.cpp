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

#include "msfermion/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>
#include <json.hpp>

#include "msfermion/circuit.hpp"
#include "msfermion/dense.hpp"
#include "msfermion/errors.hpp"
#include "msfermion/hamiltonian.hpp"
#include "msfermion/reference_counts.hpp"
#include "msfermion/synthesis.hpp"
#include "msfermion/trotter.hpp"

namespace msfermion::cli {

namespace {

using json = nlohmann::json;

/// Bad flag values or combinations; exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unreadable input file; exit code 3.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---- operand parsing ------------------------------------------------------

std::vector<std::size_t> parse_index_list(const std::string& flag, const std::string& text) {
  std::vector<std::size_t> out;
  if (text.empty()) return out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    const std::string_view tok(text.data() + pos, comma - pos);
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw UsageError(fmt::format("{}: '{}' is not a comma-separated list of mode indices", flag,
                                   text));
    }
    out.push_back(v);
    pos = comma + 1;
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& flag, const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      const double v = std::stod(tok, &used);
      if (used != tok.size() || !std::isfinite(v)) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      throw UsageError(fmt::format("{}: '{}' is not a number", flag, tok));
    }
  }
  if (out.empty()) throw UsageError(fmt::format("{}: expected at least one number", flag));
  return out;
}

void require_increasing(const std::string& flag, const std::vector<std::size_t>& v,
                        std::size_t count, const char* what) {
  if (v.size() != count) {
    throw UsageError(fmt::format("{}: {} needs {} modes, got {}", flag, what, count, v.size()));
  }
  for (std::size_t k = 1; k < v.size(); ++k) {
    if (v[k - 1] >= v[k]) {
      throw UsageError(fmt::format("{}: {} needs strictly increasing modes, got {}", flag, what,
                                   fmt::join(v, ",")));
    }
  }
}

double default_tolerance() {
  const char* env = std::getenv("MSFERMION_TOL");
  if (env == nullptr || *env == '\0') return kDefaultTolerance;
  char* end = nullptr;
  const double v = std::strtod(env, &end);
  if (end == env || *end != '\0' || !(v > 0.0)) {
    throw UsageError(fmt::format("MSFERMION_TOL: '{}' is not a positive number", env));
  }
  return v;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(fmt::format("cannot read '{}'", path));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw InputError(fmt::format("cannot write '{}'", path));
  f << text;
}

Circuit read_circuit(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return deserialize(text);
  } catch (const ParseError& e) {
    throw ParseError(0, fmt::format("{}: {}", path, e.what()));
  }
}

// ---- generator metadata ---------------------------------------------------
// "generator" holds space-separated terms "weight|creation|annihilation|control|sym",
// control "-" when absent. "theta" multiplies the whole sum.

std::string encode_term(const ExcitationTerm& t) {
  return fmt::format("{:.17g}|{}|{}|{}|{}", t.coefficient, fmt::join(t.creation, ","),
                     fmt::join(t.annihilation, ","),
                     t.kind == ExcitationKind::controlled_single ? std::to_string(t.control) : "-",
                     t.symmetrized ? 1 : 0);
}

std::vector<ExcitationTerm> decode_generator(const std::string& text) {
  std::vector<ExcitationTerm> out;
  std::stringstream ss(text);
  std::string item;
  while (ss >> item) {
    std::vector<std::string> f;
    std::stringstream fs(item);
    std::string part;
    while (std::getline(fs, part, '|')) f.push_back(part);
    if (f.size() != 5) throw ParseError(0, fmt::format("malformed generator term '{}'", item));
    try {
      const double w = std::stod(f[0]);
      auto c = parse_index_list("generator", f[1]);
      auto a = parse_index_list("generator", f[2]);
      const bool sym = f[4] == "1";
      if (f[3] != "-") {
        const std::size_t j = std::stoul(f[3]);
        c.push_back(j);
        a.push_back(j);
      }
      out.push_back(ExcitationTerm::from_ladder(c, a, sym, w));
    } catch (const std::exception& e) {
      throw ParseError(0, fmt::format("malformed generator term '{}': {}", item, e.what()));
    }
  }
  if (out.empty()) throw ParseError(0, "empty generator declaration");
  return out;
}

void declare_generator(Circuit& c, const std::vector<ExcitationTerm>& terms, double theta) {
  std::vector<std::string> parts;
  for (const auto& t : terms) parts.push_back(encode_term(t));
  c.set_meta("generator", fmt::format("{}", fmt::join(parts, " ")));
  c.set_meta("theta", fmt::format("{:.17g}", theta));
}

// ---- reports --------------------------------------------------------------

json count_json(const GateCountReport& r) {
  json hist = json::object();
  for (const auto& [k, v] : r.ms_locality_histogram) hist[std::to_string(k)] = v;
  return {{"ms", r.ms_total()},         {"ms_forward", r.ms_forward},
          {"ms_backward", r.ms_backward}, {"ms_xx", r.ms_xx},
          {"ms_yy", r.ms_yy},           {"rz", r.rz},
          {"crz", r.crz},               {"rzz", r.rzz},
          {"clifford1", r.clifford1},   {"cnot", r.cnot},
          {"global_phase", r.global_phase}, {"ms_locality", hist}};
}

void print_count(const GateCountReport& r, std::ostream& out) {
  out << fmt::format("MS: {} (forward {}, backward {}; xx {}, yy {})\n", r.ms_total(),
                     r.ms_forward, r.ms_backward, r.ms_xx, r.ms_yy);
  out << fmt::format("Rz: {}  CRz: {}  Rzz: {}  CNOT: {}\n", r.rz, r.crz, r.rzz, r.cnot);
  out << fmt::format("local Clifford: {}  global phase: {}\n", r.clifford1, r.global_phase);
  std::vector<std::string> hist;
  for (const auto& [k, v] : r.ms_locality_histogram) hist.push_back(fmt::format("{}:{}", k, v));
  out << fmt::format("MS locality: {}\n", hist.empty() ? "-" : fmt::format("{}", fmt::join(hist, " ")));
}

json cost_json(const CostReport& r) {
  return {{"tau", r.tau}, {"total_ms_time", r.total_ms_time},
          {"sequential_depth", r.sequential_depth}};
}

void print_cost(const CostReport& r, std::ostream& out) {
  out << fmt::format("MS time: {:.6g} (tau {:.6g}, sum of tau*sqrt(n))\n", r.total_ms_time, r.tau);
  out << fmt::format("depth: {}\n", r.sequential_depth);
}

// ---- oracles --------------------------------------------------------------

DenseOperator product_unitary(const std::vector<ExcitationTerm>& terms,
                              const std::vector<double>& angles, std::size_t n) {
  DenseOperator u = DenseOperator::Identity(std::int64_t{1} << n, std::int64_t{1} << n);
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const DenseOperator step = generator_unitary(weighted_pauli(terms[k], n), angles[k]);
    u = step * u;
  }
  return u;
}

DenseOperator trotter_reference(const HamiltonianTermList& h, const TrotterStep& step, double dt) {
  const std::size_t n = h.n_modes;
  const std::int64_t d = std::int64_t{1} << n;
  DenseOperator u = DenseOperator::Identity(d, d) * std::polar(1.0, -dt * h.constant);
  for (const auto& t : h.local) {
    const DenseOperator e = generator_unitary(t.pauli(n), dt);
    u = e * u;
  }
  for (const auto& b : step.schedule) {
    for (const auto& t : b.terms) {
      const DenseOperator e = generator_unitary(weighted_pauli(t, n), dt);
      u = e * u;
    }
  }
  return u;
}

struct Verdict {
  bool pass;
  double distance;
};

Verdict check(const Circuit& c, const DenseOperator& target, double tol,
              EquivalenceMode mode = EquivalenceMode::exact) {
  const auto v = assert_equivalent(circuit_unitary(c), target, mode, tol);
  return {v.pass, v.distance};
}

std::string verdict_line(const Verdict& v, double tol) {
  return fmt::format("oracle distance: {:.3e} (tol {:.1e}) {}\n", v.distance, tol,
                     v.pass ? "PASS" : "FAIL");
}

// ---- subcommands ----------------------------------------------------------

struct CompileArgs {
  std::string op;
  std::string orbitals;
  std::optional<std::size_t> control;
  double theta = 0.0;
  std::string axis = "xx";
  std::string variant = "a";
  bool symmetrized = false;
  bool baseline = false;
  bool eliminate_backward = false;
  std::size_t qubits = 0;
  std::string output;
};

int do_compile(const CompileArgs& a, std::ostream& out) {
  const auto modes = parse_index_list("--orbitals", a.orbitals);
  const MsAxis axis = a.axis == "yy" ? MsAxis::yy : MsAxis::xx;
  const ControlledVariant variant = a.variant == "b" ? ControlledVariant::b : ControlledVariant::a;
  if (a.control && a.op != "controlled") {
    throw UsageError("--control only applies to --op controlled");
  }
  std::vector<ExcitationTerm> terms;
  Circuit c;
  if (a.op == "single") {
    if (modes.size() == 2 && modes[0] >= modes[1]) {
      throw UsageError(fmt::format(
          "--orbitals: single excitation needs p < q (ordering violation: {} >= {})", modes[0],
          modes[1]));
    }
    require_increasing("--orbitals", modes, 2, "single excitation");
    terms = {ExcitationTerm::single(modes[0], modes[1], a.symmetrized)};
    if (!a.symmetrized && !a.baseline) {
      c = compile_single_excitation(modes[0], modes[1], a.theta, axis, a.qubits);
    }
  } else if (a.op == "double" || a.op == "coupled" || a.op == "mixed") {
    require_increasing("--orbitals", modes, 4, "double excitation");
    const auto [p, q, r, s] = std::array{modes[0], modes[1], modes[2], modes[3]};
    terms = {ExcitationTerm::double_excitation(p, q, r, s, a.symmetrized)};
    if (a.op != "double" && a.symmetrized) {
      throw UsageError(fmt::format("--symmetrized is not available for --op {}", a.op));
    }
    if (a.op == "coupled") {
      terms.push_back(ExcitationTerm::from_ladder({p, s}, {r, q}, false));
      if (!a.baseline) c = compile_coupled_exchange(p, q, r, s, a.theta, a.qubits);
    } else if (a.op == "mixed") {
      if (a.baseline) throw UsageError("--baseline is not available for --op mixed");
      c = compile_mixed_cnot(p, q, r, s, a.theta, a.qubits);
    }
  } else if (a.op == "controlled") {
    if (!a.control) throw UsageError("--op controlled needs --control");
    require_increasing("--orbitals", modes, 2, "controlled single excitation");
    if (*a.control == modes[0] || *a.control == modes[1]) {
      throw UsageError("--control must differ from both --orbitals modes");
    }
    terms = {ExcitationTerm::controlled_single(modes[0], modes[1], *a.control, a.symmetrized)};
  } else if (a.op == "higher") {
    if (modes.empty() || modes.size() % 2 != 0) {
      throw UsageError("--orbitals: higher excitation needs N creation then N annihilation modes");
    }
    const std::size_t n = modes.size() / 2;
    const std::vector<std::size_t> occ(modes.begin(), modes.begin() + n);
    const std::vector<std::size_t> virt(modes.begin() + n, modes.end());
    try {
      terms = {ExcitationTerm::higher(occ, virt, a.symmetrized)};
    } catch (const StructuralError& e) {
      throw UsageError(fmt::format("--orbitals: {}", e.what()));
    }
  } else {
    throw UsageError(fmt::format("--op: unknown operation '{}'", a.op));
  }

  if (c.n_qubits() == 0) {
    if (a.baseline) {
      c = Circuit(std::max(a.qubits, terms.front().max_mode() + 1));
      for (const auto& t : terms) c.append(baseline_string_by_string(t, a.theta, c.n_qubits()));
      c.set_meta("op", "baseline");
    } else {
      c = compile_excitation(terms.front(), a.theta, a.qubits, variant);
    }
  }
  if (a.eliminate_backward) c = eliminate_backward_ms(c);
  declare_generator(c, terms, a.theta);
  write_output(a.output, serialize(c), out);
  if (!a.output.empty() && a.output != "-") {
    out << fmt::format("wrote {} ({} qubits, {} gates, MS {})\n", a.output, c.n_qubits(),
                       c.size(), count(c).ms_total());
  }
  return kOk;
}

int do_verify(const std::string& path, std::optional<double> tol_flag, const std::string& mode,
              std::ostream& out) {
  const double tol = tol_flag ? *tol_flag : default_tolerance();
  const Circuit c = read_circuit(path);
  const std::string gen = c.meta("generator");
  if (gen.empty()) throw ParseError(0, fmt::format("{}: no 'generator' metadata to verify against", path));
  const auto terms = decode_generator(gen);
  double theta = 0.0;
  try {
    theta = std::stod(c.meta("theta", "0"));
  } catch (const std::exception&) {
    throw ParseError(0, fmt::format("{}: bad 'theta' metadata", path));
  }
  PauliSum sum(c.n_qubits());
  for (const auto& t : terms) {
    if (t.max_mode() >= c.n_qubits()) {
      throw ParseError(0, fmt::format("{}: generator touches mode {} beyond {} qubits", path,
                                      t.max_mode(), c.n_qubits()));
    }
    sum += weighted_pauli(t, c.n_qubits());
  }
  const EquivalenceMode m = mode == "global-phase" ? EquivalenceMode::global_phase
                                                   : EquivalenceMode::exact;
  const Verdict v = check(c, generator_unitary(sum, theta), tol, m);
  out << fmt::format("generator: {} (theta {:.17g})\n", gen, theta);
  out << verdict_line(v, tol);
  return v.pass ? kOk : kVerificationFailed;
}

struct UccsdArgs {
  std::size_t modes = 0;
  std::string occupied;
  std::string virt;
  std::string theta = "0.1";
  bool baseline = false;
  std::optional<double> tol;
  std::string output;
  std::string format = "text";
};

int do_uccsd(const UccsdArgs& a, std::ostream& out) {
  AnsatzSpec spec{a.modes, parse_index_list("--occupied", a.occupied),
                  parse_index_list("--virtual", a.virt), {}};
  std::vector<ExcitationTerm> ex;
  try {
    ex = uccsd_excitations(spec);
  } catch (const StructuralError& e) {
    throw UsageError(fmt::format("--occupied/--virtual: {}", e.what()));
  }
  auto theta = parse_double_list("--theta", a.theta);
  if (theta.size() == 1) theta.assign(ex.size(), theta.front());
  if (theta.size() != ex.size()) {
    throw UsageError(fmt::format("--theta: {} values for {} excitations", theta.size(), ex.size()));
  }
  spec.theta = theta;
  const Circuit c = a.baseline ? build_uccsd_baseline(spec) : build_uccsd_layer(spec);
  const GateCountReport r = count(c);
  json report{{"excitations", ex.size()}, {"ms", r.ms_total()}, {"baseline", a.baseline}};
  int code = kOk;
  std::string verdict;
  if (a.modes <= kMaxDenseQubits) {
    const double tol = a.tol ? *a.tol : default_tolerance();
    std::vector<double> angles;
    for (std::size_t k = 0; k < ex.size(); ++k) angles.push_back(theta[k]);
    const Verdict v = check(c, product_unitary(ex, angles, a.modes), tol);
    report["oracle_distance"] = v.distance;
    report["pass"] = v.pass;
    verdict = verdict_line(v, tol);
    if (!v.pass) code = kVerificationFailed;
  }
  if (!a.output.empty()) write_output(a.output, serialize(c), out);
  if (a.format == "json") {
    out << report.dump(2) << "\n";
  } else {
    out << fmt::format("excitations: {}\n", ex.size());
    out << fmt::format("MS: {}\n", r.ms_total());
    out << verdict;
  }
  return code;
}

Scheduling parse_scheduling(const std::string& s) {
  if (s == "parallelized") return Scheduling::parallelized;
  if (s == "string-by-string") return Scheduling::string_by_string;
  if (s == "naive") return Scheduling::naive;
  throw UsageError(fmt::format("--scheduling: unknown schedule '{}'", s));
}

struct TrotterArgs {
  std::string integrals;
  std::string builtin;
  double dt = 0.1;
  std::string reality;
  std::string scheduling = "parallelized";
  std::optional<double> tol;
  std::string output;
  std::string format = "text";
};

std::size_t nonlocal_ms(const TrotterStep& step) {
  std::size_t ms = 0;
  const auto& g = step.circuit.gates();
  for (std::size_t k = step.local_gate_count; k < g.size(); ++k) ms += g[k].is_ms() ? 1 : 0;
  return ms;
}

int do_trotter(const TrotterArgs& a, std::ostream& out) {
  if (a.integrals.empty() == a.builtin.empty()) {
    throw UsageError("give exactly one of --integrals and --builtin");
  }
  if (!a.builtin.empty() && a.builtin != "h3plus") {
    throw UsageError(fmt::format("--builtin: unknown dataset '{}'", a.builtin));
  }
  const HamiltonianTermList h =
      a.builtin.empty() ? term_list(parse_integrals(read_file(a.integrals))) : h3plus_builtin();
  Reality reality = h.reality;
  if (!a.reality.empty()) {
    if (a.reality != "real" && a.reality != "complex") {
      throw UsageError(fmt::format("--reality: unknown value '{}'", a.reality));
    }
    reality = a.reality == "real" ? Reality::real : Reality::complex;
    if (reality != h.reality) {
      throw UsageError(fmt::format("--reality {} does not match the {} integral table", a.reality,
                                   reality_name(h.reality)));
    }
  }
  const TrotterStep step = build_trotter_step(h, {a.dt, reality, parse_scheduling(a.scheduling)});
  json report{{"modes", h.n_modes},
              {"local_terms", h.local.size()},
              {"nonlocal_terms", h.excitations.size()},
              {"blocks", step.schedule.size()},
              {"ms", nonlocal_ms(step)},
              {"scheduling", a.scheduling}};
  int code = kOk;
  std::string verdict;
  if (h.n_modes <= kMaxDenseQubits) {
    const double tol = a.tol ? *a.tol : default_tolerance();
    const Verdict v = check(step.circuit, trotter_reference(h, step, a.dt), tol);
    report["oracle_distance"] = v.distance;
    report["pass"] = v.pass;
    verdict = verdict_line(v, tol);
    if (!v.pass) code = kVerificationFailed;
  }
  if (!a.output.empty()) write_output(a.output, serialize(step.circuit), out);
  if (a.format == "json") {
    out << report.dump(2) << "\n";
  } else {
    out << fmt::format("terms: {} local, {} non-local in {} blocks\n", h.local.size(),
                       h.excitations.size(), step.schedule.size());
    out << fmt::format("MS: {} ({})\n", nonlocal_ms(step), a.scheduling);
    out << verdict;
  }
  return code;
}

struct DemoArgs {
  std::string system;
  bool uccsd = false;
  bool trotter = false;
  double dt = 0.1;
  double theta = 0.1;
  std::optional<double> tol;
  std::string format = "text";
};

int demo_uccsd(const DemoArgs& a, json& report, std::ostream& out) {
  AnsatzSpec spec{6, {0, 1}, {2, 3, 4, 5}, {}};
  const auto ex = uccsd_excitations(spec);
  spec.theta.assign(ex.size(), a.theta);
  const Circuit layer = build_uccsd_layer(spec);
  const Circuit base = build_uccsd_baseline(spec);
  const std::size_t ms = count(layer).ms_total();
  const std::size_t ms_base = count(base).ms_total();
  const double tol = a.tol ? *a.tol : default_tolerance();
  const Verdict v = check(layer, product_unitary(ex, spec.theta, 6), tol);
  const Verdict vb = check(base, product_unitary(ex, spec.theta, 6), tol);
  const double factor = static_cast<double>(ms_base) / static_cast<double>(ms);
  std::size_t singles = 0;
  for (const auto& t : ex) singles += t.kind == ExcitationKind::single ? 1 : 0;
  report["uccsd"] = {{"ms", ms},
                     {"baseline_ms", ms_base},
                     {"factor", factor},
                     {"reference", {{"ms", reference::kH3plusUccsdMs},
                                    {"baseline_ms", reference::kH3plusUccsdBaselineMs},
                                    {"factor", reference::kH3plusUccsdFactor}}},
                     {"oracle_distance", v.distance},
                     {"baseline_oracle_distance", vb.distance},
                     {"pass", v.pass && vb.pass}};
  if (a.format != "json") {
    out << fmt::format("H3+ UCCSD layer from |110000>: {} singles, {} doubles, theta {}\n",
                       singles, ex.size() - singles, a.theta);
    out << fmt::format("MS: {} (baseline {}, factor {:.1f})\n", ms, ms_base, factor);
    out << fmt::format("reference: {} (baseline {}, factor {:.1f}) {}\n",
                       reference::kH3plusUccsdMs, reference::kH3plusUccsdBaselineMs,
                       reference::kH3plusUccsdFactor,
                       ms == reference::kH3plusUccsdMs && ms_base == reference::kH3plusUccsdBaselineMs
                           ? "match"
                           : "MISMATCH");
    out << verdict_line(v, tol);
    out << "baseline " << verdict_line(vb, tol);
  }
  return v.pass && vb.pass ? kOk : kVerificationFailed;
}

int demo_trotter(const DemoArgs& a, json& report, std::ostream& out) {
  const HamiltonianTermList h = h3plus_builtin();
  std::map<Scheduling, std::size_t> ms;
  bool pass = true;
  double worst = 0.0;
  bool local_only_z = true;
  const double tol = a.tol ? *a.tol : default_tolerance();
  for (Scheduling s : {Scheduling::parallelized, Scheduling::string_by_string, Scheduling::naive}) {
    const TrotterStep step = build_trotter_step(h, {a.dt, Reality::real, s});
    ms[s] = nonlocal_ms(step);
    const Verdict v = check(step.circuit, trotter_reference(h, step, a.dt), tol);
    pass = pass && v.pass;
    worst = std::max(worst, v.distance);
    for (std::size_t k = 0; k < step.local_gate_count; ++k) {
      const GateKind kind = step.circuit.gates()[k].kind;
      local_only_z = local_only_z && (kind == GateKind::rz || kind == GateKind::rzz ||
                                      kind == GateKind::global_phase);
    }
  }
  const std::size_t par = ms[Scheduling::parallelized];
  const std::size_t sbs = ms[Scheduling::string_by_string];
  const std::size_t naive = ms[Scheduling::naive];
  const double speedup = static_cast<double>(sbs) / static_cast<double>(par);
  report["trotter"] = {{"dt", a.dt},
                       {"ms", par},
                       {"string_by_string_ms", sbs},
                       {"naive_ms", naive},
                       {"speedup", speedup},
                       {"local_part_rz_rzz_only", local_only_z},
                       {"reference", {{"ms", reference::kH3plusTrotterMs},
                                      {"string_by_string_ms", reference::kH3plusTrotterStringMs},
                                      {"naive_ms", reference::kH3plusTrotterNaiveMs},
                                      {"speedup", reference::kH3plusTrotterFactor}}},
                       {"oracle_distance", worst},
                       {"pass", pass && local_only_z}};
  if (a.format != "json") {
    out << fmt::format("H3+ Trotter step, dt {}: {} local terms, {} non-local terms\n", a.dt,
                       h.local.size(), h.excitations.size());
    out << fmt::format("MS: {} (string-by-string {}, naive {})\n", par, sbs, naive);
    out << fmt::format("speedup: {:.1f}\n", speedup);
    const bool match = par == reference::kH3plusTrotterMs &&
                       sbs == reference::kH3plusTrotterStringMs &&
                       naive == reference::kH3plusTrotterNaiveMs;
    out << fmt::format("reference: {} (string-by-string {}, naive {}, speedup {:.1f}) {}\n",
                       reference::kH3plusTrotterMs, reference::kH3plusTrotterStringMs,
                       reference::kH3plusTrotterNaiveMs, reference::kH3plusTrotterFactor,
                       match ? "match" : "MISMATCH");
    out << fmt::format("local part: {}\n", local_only_z ? "Rz/Rzz only" : "unexpected gates");
    out << verdict_line({pass, worst}, tol);
  }
  return pass && local_only_z ? kOk : kVerificationFailed;
}

int do_demo(const DemoArgs& a, std::ostream& out) {
  if (a.system != "h3plus") throw UsageError(fmt::format("demo: unknown system '{}'", a.system));
  const bool both = !a.uccsd && !a.trotter;
  json report = json::object();
  int code = kOk;
  if (a.uccsd || both) code = std::max(code, demo_uccsd(a, report, out));
  if (a.trotter || both) code = std::max(code, demo_trotter(a, report, out));
  if (a.format == "json") out << report.dump(2) << "\n";
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fermionic excitations compiled to Molmer-Sorensen gates", "msfermion"};
  app.require_subcommand(1);
  const std::vector<std::string> formats{"text", "json"};

  CompileArgs ca;
  auto* compile = app.add_subcommand("compile", "Compile one excitation to a circuit file");
  compile->add_option("--op", ca.op, "single|double|controlled|coupled|mixed|higher")->required();
  compile->add_option("--orbitals", ca.orbitals, "Comma-separated modes")->required();
  compile->add_option("--control", ca.control, "Control mode (--op controlled)");
  compile->add_option("--theta", ca.theta, "Rotation angle of exp(-i theta G)");
  compile->add_option("--axis", ca.axis, "MS axis for singles")->check(CLI::IsMember({"xx", "yy"}));
  compile->add_option("--variant", ca.variant, "Controlled-single variant")
      ->check(CLI::IsMember({"a", "b"}));
  compile->add_flag("--symmetrized", ca.symmetrized, "Use G~ = A + A^dagger");
  compile->add_flag("--baseline", ca.baseline, "One MS pair per Pauli string");
  compile->add_flag("--eliminate-backward", ca.eliminate_backward,
                    "Rewrite backward MS gates as forward ones");
  compile->add_option("--qubits", ca.qubits, "Circuit width (default: smallest that fits)");
  compile->add_option("-o,--output", ca.output, "Output file (default stdout)");

  std::string circuit_path;
  std::optional<double> tol;
  std::string mode = "exact";
  auto* verify = app.add_subcommand("verify", "Check a circuit against its declared generator");
  verify->add_option("--circuit", circuit_path, "Circuit file")->required();
  verify->add_option("--tol", tol, "Tolerance (default MSFERMION_TOL or 1e-9)")
      ->check(CLI::PositiveNumber);
  verify->add_option("--mode", mode, "exact|global-phase")
      ->check(CLI::IsMember({"exact", "global-phase"}));

  std::string format = "text";
  auto* count_cmd = app.add_subcommand("count", "Gate counts of a circuit file");
  count_cmd->add_option("--circuit", circuit_path, "Circuit file")->required();
  count_cmd->add_option("--format", format)->check(CLI::IsMember(formats));

  double tau = 1.0;
  auto* cost_cmd = app.add_subcommand("cost", "MS time and depth of a circuit file");
  cost_cmd->add_option("--circuit", circuit_path, "Circuit file")->required();
  cost_cmd->add_option("--tau", tau, "Two-qubit MS duration")->check(CLI::PositiveNumber);
  cost_cmd->add_option("--format", format)->check(CLI::IsMember(formats));

  UccsdArgs ua;
  auto* uccsd = app.add_subcommand("uccsd", "Build one UCCSD layer");
  uccsd->add_option("--modes", ua.modes, "Number of modes")->required();
  uccsd->add_option("--occupied", ua.occupied, "Occupied modes")->required();
  uccsd->add_option("--virtual", ua.virt, "Virtual modes")->required();
  uccsd->add_option("--theta", ua.theta, "One angle, or one per excitation");
  uccsd->add_flag("--baseline", ua.baseline, "String-by-string lowering");
  uccsd->add_option("--tol", ua.tol)->check(CLI::PositiveNumber);
  uccsd->add_option("-o,--output", ua.output, "Circuit output file");
  uccsd->add_option("--format", ua.format)->check(CLI::IsMember(formats));

  TrotterArgs ta;
  auto* trotter = app.add_subcommand("trotter", "Build one first-order Trotter step");
  auto* integrals = trotter->add_option("--integrals", ta.integrals, "Integral file");
  trotter->add_option("--builtin", ta.builtin, "Built-in dataset (h3plus)")->excludes(integrals);
  trotter->add_option("--dt", ta.dt, "Time step")->required();
  trotter->add_option("--reality", ta.reality, "real|complex (must match the table)");
  trotter->add_option("--scheduling", ta.scheduling, "parallelized|string-by-string|naive");
  trotter->add_option("--tol", ta.tol)->check(CLI::PositiveNumber);
  trotter->add_option("-o,--output", ta.output, "Circuit output file");
  trotter->add_option("--format", ta.format)->check(CLI::IsMember(formats));

  DemoArgs da;
  auto* demo = app.add_subcommand("demo", "Rebuild the H3+ examples and compare counts");
  demo->add_option("system", da.system, "h3plus")->required();
  demo->add_flag("--uccsd", da.uccsd, "UCCSD layer");
  demo->add_flag("--trotter", da.trotter, "Trotter step");
  demo->add_option("--dt", da.dt, "Trotter time step");
  demo->add_option("--theta", da.theta, "UCCSD angle for every excitation");
  demo->add_option("--tol", da.tol)->check(CLI::PositiveNumber);
  demo->add_option("--format", da.format)->check(CLI::IsMember(formats));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }

  try {
    if (*compile) return do_compile(ca, out);
    if (*verify) return do_verify(circuit_path, tol, mode, out);
    if (*count_cmd) {
      const GateCountReport r = count(read_circuit(circuit_path));
      if (format == "json") {
        out << count_json(r).dump(2) << "\n";
      } else {
        print_count(r, out);
      }
      return kOk;
    }
    if (*cost_cmd) {
      const CostReport r = cost(read_circuit(circuit_path), tau);
      if (format == "json") {
        out << cost_json(r).dump(2) << "\n";
      } else {
        print_cost(r, out);
      }
      return kOk;
    }
    if (*uccsd) return do_uccsd(ua, out);
    if (*trotter) return do_trotter(ta, out);
    if (*demo) return do_demo(da, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const SymmetryError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kUsageError;
}

}  // namespace msfermion::cli
