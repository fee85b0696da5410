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

#include "msfermion/circuit.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "msfermion/errors.hpp"

namespace msfermion {

namespace {

void require_finite(double a) {
  if (!std::isfinite(a)) throw StructuralError("gate angle must be finite");
}

void require_distinct(std::size_t a, std::size_t b, const char* what) {
  if (a == b) throw StructuralError(fmt::format("{} acts on qubit {} twice", what, a));
}

constexpr Clifford1 kCliffords[] = {Clifford1::h,    Clifford1::s, Clifford1::sdg,
                                    Clifford1::sx,   Clifford1::sxdg, Clifford1::x,
                                    Clifford1::y,    Clifford1::z};

}  // namespace

Gate Gate::ms(MsAxis axis, MsDirection direction, std::vector<std::size_t> qubits) {
  if (qubits.empty()) throw StructuralError("MS gate needs at least one qubit");
  std::sort(qubits.begin(), qubits.end());
  if (std::adjacent_find(qubits.begin(), qubits.end()) != qubits.end()) {
    throw StructuralError(fmt::format("MS qubit set {} has duplicates", fmt::join(qubits, ",")));
  }
  Gate g;
  g.kind = GateKind::ms;
  g.axis = axis;
  g.direction = direction;
  g.qubits = std::move(qubits);
  return g;
}

Gate Gate::rz(std::size_t q, double angle) {
  require_finite(angle);
  Gate g;
  g.kind = GateKind::rz;
  g.qubits = {q};
  g.angle = angle;
  return g;
}

Gate Gate::crz(std::size_t control, std::size_t target, double angle) {
  require_finite(angle);
  require_distinct(control, target, "CRz");
  Gate g;
  g.kind = GateKind::crz;
  g.qubits = {control, target};
  g.angle = angle;
  return g;
}

Gate Gate::rzz(std::size_t a, std::size_t b, double angle) {
  require_finite(angle);
  require_distinct(a, b, "Rzz");
  Gate g;
  g.kind = GateKind::rzz;
  g.qubits = {a, b};
  g.angle = angle;
  return g;
}

Gate Gate::single(Clifford1 c, std::size_t q) {
  Gate g;
  g.kind = GateKind::clifford1;
  g.clifford = c;
  g.qubits = {q};
  return g;
}

Gate Gate::cnot(std::size_t control, std::size_t target) {
  require_distinct(control, target, "CNOT");
  Gate g;
  g.kind = GateKind::cnot;
  g.qubits = {control, target};
  return g;
}

Gate Gate::global_phase(double angle) {
  require_finite(angle);
  Gate g;
  g.kind = GateKind::global_phase;
  g.angle = angle;
  return g;
}

std::string Gate::name() const {
  switch (kind) {
    case GateKind::ms:
      return fmt::format("ms.{}.{}", axis == MsAxis::xx ? "xx" : "yy",
                         direction == MsDirection::forward ? "fwd" : "bwd");
    case GateKind::rz: return "rz";
    case GateKind::crz: return "crz";
    case GateKind::rzz: return "rzz";
    case GateKind::clifford1: return std::string(clifford_name(clifford));
    case GateKind::cnot: return "cnot";
    case GateKind::global_phase: return "gphase";
  }
  return "?";
}

Gate Gate::inverse() const {
  Gate g = *this;
  switch (kind) {
    case GateKind::ms:
      g.direction =
          direction == MsDirection::forward ? MsDirection::backward : MsDirection::forward;
      break;
    case GateKind::rz:
    case GateKind::crz:
    case GateKind::rzz:
    case GateKind::global_phase: g.angle = -angle; break;
    case GateKind::clifford1: g.clifford = msfermion::inverse(clifford); break;
    case GateKind::cnot: break;
  }
  return g;
}

void Circuit::set_meta(const std::string& key, const std::string& value) {
  if (key.empty() || key.find_first_of(" \t\r\n") != std::string::npos) {
    throw StructuralError(fmt::format("metadata key '{}' must be a single non-empty word", key));
  }
  if (value.find_first_of("\r\n") != std::string::npos) {
    throw StructuralError(fmt::format("metadata value for '{}' must be a single line", key));
  }
  metadata_[key] = value;
}

std::string Circuit::meta(const std::string& key, const std::string& fallback) const {
  auto it = metadata_.find(key);
  return it == metadata_.end() ? fallback : it->second;
}

void Circuit::append(Gate g) {
  for (std::size_t q : g.qubits) {
    if (q >= n_qubits_) {
      throw StructuralError(
          fmt::format("gate {} uses qubit {} on a {}-qubit circuit", g.name(), q, n_qubits_));
    }
  }
  gates_.push_back(std::move(g));
}

void Circuit::append(const Circuit& other) {
  if (other.n_qubits_ > n_qubits_) {
    throw StructuralError(fmt::format("cannot append a {}-qubit circuit to a {}-qubit circuit",
                                      other.n_qubits_, n_qubits_));
  }
  gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
}

Circuit Circuit::inverse() const {
  Circuit out(n_qubits_);
  out.metadata_ = metadata_;
  for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) out.gates_.push_back(it->inverse());
  return out;
}

GateCountReport count(const Circuit& c) {
  GateCountReport r;
  for (const Gate& g : c.gates()) {
    switch (g.kind) {
      case GateKind::ms:
        (g.direction == MsDirection::forward ? r.ms_forward : r.ms_backward)++;
        (g.axis == MsAxis::xx ? r.ms_xx : r.ms_yy)++;
        r.ms_locality_histogram[g.qubits.size()]++;
        break;
      case GateKind::rz: r.rz++; break;
      case GateKind::crz: r.crz++; break;
      case GateKind::rzz: r.rzz++; break;
      case GateKind::clifford1: r.clifford1++; break;
      case GateKind::cnot: r.cnot++; break;
      case GateKind::global_phase: r.global_phase++; break;
    }
  }
  return r;
}

CostReport cost(const Circuit& c, double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw StructuralError("tau must be positive");
  CostReport r;
  r.tau = tau;
  std::vector<std::size_t> level(c.n_qubits(), 0);
  for (const Gate& g : c.gates()) {
    if (g.is_ms()) r.total_ms_time += tau * std::sqrt(static_cast<double>(g.qubits.size()));
    if (g.qubits.empty()) continue;
    std::size_t l = 0;
    for (std::size_t q : g.qubits) l = std::max(l, level[q]);
    for (std::size_t q : g.qubits) level[q] = l + 1;
    r.sequential_depth = std::max(r.sequential_depth, l + 1);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Text format

std::string serialize(const Circuit& c) {
  std::string out = fmt::format("msfermion-circuit {}\nqubits {}\n", kCircuitFormatVersion,
                                c.n_qubits());
  for (const auto& [k, v] : c.metadata()) out += fmt::format("meta {} {}\n", k, v);
  for (const Gate& g : c.gates()) {
    std::string qubits = g.qubits.empty() ? "-" : fmt::format("{}", fmt::join(g.qubits, ","));
    switch (g.kind) {
      case GateKind::rz:
      case GateKind::crz:
      case GateKind::rzz:
      case GateKind::global_phase:
        out += fmt::format("{} {} {:.17g}\n", g.name(), qubits, g.angle);
        break;
      default: out += fmt::format("{} {}\n", g.name(), qubits); break;
    }
  }
  return out;
}

namespace {

std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::size_t parse_index(const std::string& s, std::size_t line) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ParseError(line, fmt::format("expected a non-negative integer, got '{}'", s));
  }
  return v;
}

double parse_angle(const std::string& s, std::size_t line) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ParseError(line, fmt::format("expected a finite angle, got '{}'", s));
  }
  return v;
}

std::vector<std::size_t> parse_qubits(const std::string& s, std::size_t line) {
  std::vector<std::size_t> out;
  if (s == "-") return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = s.find(',', start);
    out.push_back(parse_index(s.substr(start, comma - start), line));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

Gate build_gate(const std::string& name, const std::vector<std::size_t>& q,
                const std::vector<std::string>& fields, std::size_t line) {
  auto want = [&](std::size_t n_qubits, bool has_angle) {
    if (q.size() != n_qubits) {
      throw ParseError(line, fmt::format("{} expects {} qubit(s), got {}", name, n_qubits,
                                         q.size()));
    }
    const std::size_t n_fields = has_angle ? 3 : 2;
    if (fields.size() != n_fields) {
      throw ParseError(line, fmt::format("{} expects {} field(s), got {}", name, n_fields,
                                         fields.size()));
    }
  };
  if (name.rfind("ms.", 0) == 0) {
    MsAxis axis;
    MsDirection dir;
    if (name == "ms.xx.fwd") {
      axis = MsAxis::xx, dir = MsDirection::forward;
    } else if (name == "ms.xx.bwd") {
      axis = MsAxis::xx, dir = MsDirection::backward;
    } else if (name == "ms.yy.fwd") {
      axis = MsAxis::yy, dir = MsDirection::forward;
    } else if (name == "ms.yy.bwd") {
      axis = MsAxis::yy, dir = MsDirection::backward;
    } else {
      throw SchemaError(line, fmt::format("unknown gate '{}' in format version {}", name,
                                          kCircuitFormatVersion));
    }
    if (fields.size() != 2 || q.empty()) {
      throw ParseError(line, fmt::format("{} expects one non-empty qubit list", name));
    }
    return Gate::ms(axis, dir, q);
  }
  if (name == "rz") {
    want(1, true);
    return Gate::rz(q[0], parse_angle(fields[2], line));
  }
  if (name == "crz") {
    want(2, true);
    return Gate::crz(q[0], q[1], parse_angle(fields[2], line));
  }
  if (name == "rzz") {
    want(2, true);
    return Gate::rzz(q[0], q[1], parse_angle(fields[2], line));
  }
  if (name == "gphase") {
    want(0, true);
    return Gate::global_phase(parse_angle(fields[2], line));
  }
  if (name == "cnot") {
    want(2, false);
    return Gate::cnot(q[0], q[1]);
  }
  for (Clifford1 c : kCliffords) {
    if (name == clifford_name(c)) {
      want(1, false);
      return Gate::single(c, q[0]);
    }
  }
  throw SchemaError(line, fmt::format("unknown gate '{}' in format version {}", name,
                                      kCircuitFormatVersion));
}

}  // namespace

Circuit deserialize(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view l = text.substr(start, nl - start);
    if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
    lines.push_back(l);
    start = nl + 1;
  }
  std::size_t i = 0;
  auto next_content = [&]() -> std::size_t {
    while (i < lines.size()) {
      const auto f = split_ws(lines[i]);
      if (!f.empty() && f[0][0] != '#') return i;
      ++i;
    }
    return lines.size();
  };

  if (next_content() == lines.size()) throw ParseError(0, "empty circuit document");
  auto header = split_ws(lines[i]);
  if (header.size() != 2 || header[0] != "msfermion-circuit") {
    throw ParseError(i + 1, "expected 'msfermion-circuit <version>' header");
  }
  const std::size_t version = parse_index(header[1], i + 1);
  if (version != static_cast<std::size_t>(kCircuitFormatVersion)) {
    throw SchemaError(i + 1, fmt::format("unsupported circuit format version {}", version));
  }
  ++i;
  if (next_content() == lines.size()) throw ParseError(i, "missing 'qubits <n>' record");
  auto qline = split_ws(lines[i]);
  if (qline.size() != 2 || qline[0] != "qubits") {
    throw ParseError(i + 1, "expected 'qubits <n>' record");
  }
  Circuit c(parse_index(qline[1], i + 1));
  ++i;

  while (next_content() < lines.size()) {
    const std::size_t lineno = i + 1;
    const auto fields = split_ws(lines[i]);
    if (fields[0] == "meta") {
      if (fields.size() < 2) throw ParseError(lineno, "meta record needs a key");
      // The value is the raw remainder after the key, so embedded spacing survives.
      std::string_view raw = lines[i];
      std::size_t pos = raw.find(fields[1], raw.find("meta") + 4) + fields[1].size();
      if (pos < raw.size()) ++pos;
      c.set_meta(fields[1], std::string(raw.substr(std::min(pos, raw.size()))));
    } else {
      if (fields.size() < 2) throw ParseError(lineno, fmt::format("'{}' needs qubits", fields[0]));
      try {
        c.append(build_gate(fields[0], parse_qubits(fields[1], lineno), fields, lineno));
      } catch (const StructuralError& e) {
        throw ParseError(lineno, e.what());
      }
    }
    ++i;
  }
  return c;
}

}  // namespace msfermion
