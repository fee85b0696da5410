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

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "msfermion/pauli.hpp"

namespace msfermion {

enum class GateKind : std::uint8_t { ms, rz, crz, rzz, clifford1, cnot, global_phase };
enum class MsDirection : std::uint8_t { forward, backward };

/// One native instruction.
///
/// Matrix conventions (qubit k is bit k of the basis index):
///   MS(xx, forward, S)  = exp(-i pi/4 sum_{j<k in S} X_j X_k), backward is the inverse;
///   MS(yy, ...)         = the same with Y;
///   Rz(q, a)            = exp(-i a/2 Z_q);
///   CRz(c, t, a)        = |0><0|_c + |1><1|_c Rz(t, a);
///   Rzz(a, b, phi)      = exp(-i phi/2 Z_a Z_b);
///   GlobalPhase(a)      = e^{i a}.
struct Gate {
  GateKind kind = GateKind::global_phase;
  /// ms: sorted target set; rz, clifford1: {q}; crz, cnot: {control, target};
  /// rzz: {a, b}; global_phase: empty.
  std::vector<std::size_t> qubits;
  double angle = 0.0;
  MsAxis axis = MsAxis::xx;
  MsDirection direction = MsDirection::forward;
  Clifford1 clifford = Clifford1::h;

  static Gate ms(MsAxis axis, MsDirection direction, std::vector<std::size_t> qubits);
  static Gate rz(std::size_t q, double angle);
  static Gate crz(std::size_t control, std::size_t target, double angle);
  static Gate rzz(std::size_t a, std::size_t b, double angle);
  static Gate single(Clifford1 g, std::size_t q);
  static Gate cnot(std::size_t control, std::size_t target);
  static Gate global_phase(double angle);

  bool is_ms() const noexcept { return kind == GateKind::ms; }
  /// Record name used by the circuit file format.
  std::string name() const;
  Gate inverse() const;

  friend bool operator==(const Gate&, const Gate&) = default;
};

/// Gate sequence; the first gate acts first.
class Circuit {
 public:
  explicit Circuit(std::size_t n_qubits = 0) : n_qubits_(n_qubits) {}

  std::size_t n_qubits() const noexcept { return n_qubits_; }
  const std::vector<Gate>& gates() const noexcept { return gates_; }
  std::size_t size() const noexcept { return gates_.size(); }
  bool empty() const noexcept { return gates_.empty(); }

  const std::map<std::string, std::string>& metadata() const noexcept { return metadata_; }
  void set_meta(const std::string& key, const std::string& value);
  std::string meta(const std::string& key, const std::string& fallback = {}) const;

  /// Validates qubit indices against n_qubits.
  void append(Gate g);
  /// Appends every gate of `other` (which must not be wider); metadata is not copied.
  void append(const Circuit& other);
  /// Gates in reverse order with each gate inverted.
  Circuit inverse() const;

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  std::size_t n_qubits_;
  std::vector<Gate> gates_;
  std::map<std::string, std::string> metadata_;
};

struct GateCountReport {
  std::size_t ms_forward = 0;
  std::size_t ms_backward = 0;
  std::size_t ms_xx = 0;
  std::size_t ms_yy = 0;
  std::size_t rz = 0;
  std::size_t clifford1 = 0;
  std::size_t crz = 0;
  std::size_t rzz = 0;
  std::size_t cnot = 0;
  std::size_t global_phase = 0;
  std::map<std::size_t, std::size_t> ms_locality_histogram;

  std::size_t ms_total() const noexcept { return ms_forward + ms_backward; }
  /// Rz plus Clifford1 gates.
  std::size_t single_qubit() const noexcept { return rz + clifford1; }

  friend bool operator==(const GateCountReport&, const GateCountReport&) = default;
};

struct CostReport {
  double tau = 1.0;
  /// Sum over MS gates of tau * sqrt(locality).
  double total_ms_time = 0.0;
  /// Layers under greedy as-soon-as-possible placement on disjoint qubits.
  /// Global phases occupy no layer.
  std::size_t sequential_depth = 0;
};

GateCountReport count(const Circuit& c);
CostReport cost(const Circuit& c, double tau = 1.0);

inline constexpr int kCircuitFormatVersion = 1;

/// Versioned line-oriented text; see docs/circuit-format.md.
std::string serialize(const Circuit& c);
/// Throws ParseError (with line number) or SchemaError for unknown records/versions.
Circuit deserialize(std::string_view text);

}  // namespace msfermion
