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

#include "msfermion/dense.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "msfermion/errors.hpp"

namespace msfermion {

namespace {

using cd = std::complex<double>;
using Mat2 = std::array<cd, 4>;  // row-major 2x2

constexpr cd kI{0.0, 1.0};

std::size_t dim_for(std::size_t n) {
  if (n > kMaxDenseQubits) {
    throw DimensionError(
        fmt::format("{} qubits exceed the dense-simulation limit of {}", n, kMaxDenseQubits));
  }
  return std::size_t{1} << n;
}

Mat2 clifford_matrix(Clifford1 g) {
  const double r = 1.0 / std::numbers::sqrt2;
  switch (g) {
    case Clifford1::h: return {r, r, r, -r};
    case Clifford1::s: return {1.0, 0.0, 0.0, kI};
    case Clifford1::sdg: return {1.0, 0.0, 0.0, -kI};
    case Clifford1::sx: return {cd(0.5, 0.5), cd(0.5, -0.5), cd(0.5, -0.5), cd(0.5, 0.5)};
    case Clifford1::sxdg: return {cd(0.5, -0.5), cd(0.5, 0.5), cd(0.5, 0.5), cd(0.5, -0.5)};
    case Clifford1::x: return {0.0, 1.0, 1.0, 0.0};
    case Clifford1::y: return {0.0, -kI, kI, 0.0};
    case Clifford1::z: return {1.0, 0.0, 0.0, -1.0};
  }
  throw UnsupportedGateError("unknown Clifford gate");
}

void apply_1q(cd* v, std::size_t dim, std::size_t q, const Mat2& m) {
  const std::size_t mask = std::size_t{1} << q;
  for (std::size_t b = 0; b < dim; ++b) {
    if (b & mask) continue;
    const cd a0 = v[b];
    const cd a1 = v[b | mask];
    v[b] = m[0] * a0 + m[1] * a1;
    v[b | mask] = m[2] * a0 + m[3] * a1;
  }
}

void apply_ms(cd* v, std::size_t dim, const Gate& g, MsConvention convention) {
  const Mat2 h = clifford_matrix(Clifford1::h);
  const Mat2 s = clifford_matrix(Clifford1::s);
  const Mat2 sdg = clifford_matrix(Clifford1::sdg);
  const bool yy = g.axis == MsAxis::yy;
  for (std::size_t q : g.qubits) {
    if (yy) apply_1q(v, dim, q, sdg);
    apply_1q(v, dim, q, h);
  }
  std::size_t set = 0;
  for (std::size_t q : g.qubits) set |= std::size_t{1} << q;
  const auto n = static_cast<long>(g.qubits.size());
  const double sign = g.direction == MsDirection::forward ? -1.0 : 1.0;
  // sum_{j<k} Z_j Z_k = (s^2 - n) / 2 with s = sum_j Z_j.
  std::vector<cd> table(g.qubits.size() + 1);
  for (long ones = 0; ones <= n; ++ones) {
    const long sz = n - 2 * ones;
    double phase = sign * std::numbers::pi / 4.0 * static_cast<double>(sz * sz - n) / 2.0;
    if (convention == MsConvention::collective) {
      phase += sign * std::numbers::pi * static_cast<double>(n) / 8.0;
    }
    table[static_cast<std::size_t>(ones)] = std::polar(1.0, phase);
  }
  for (std::size_t b = 0; b < dim; ++b) v[b] *= table[std::popcount(b & set)];
  for (std::size_t q : g.qubits) {
    apply_1q(v, dim, q, h);
    if (yy) apply_1q(v, dim, q, s);
  }
}

void apply_to_vector(cd* v, std::size_t dim, const Gate& g, MsConvention convention) {
  switch (g.kind) {
    case GateKind::ms: apply_ms(v, dim, g, convention); break;
    case GateKind::rz: {
      const std::size_t mask = std::size_t{1} << g.qubits[0];
      const cd p0 = std::polar(1.0, -g.angle / 2.0);
      const cd p1 = std::polar(1.0, g.angle / 2.0);
      for (std::size_t b = 0; b < dim; ++b) v[b] *= (b & mask) ? p1 : p0;
      break;
    }
    case GateKind::crz: {
      const std::size_t cm = std::size_t{1} << g.qubits[0];
      const std::size_t tm = std::size_t{1} << g.qubits[1];
      const cd p0 = std::polar(1.0, -g.angle / 2.0);
      const cd p1 = std::polar(1.0, g.angle / 2.0);
      for (std::size_t b = 0; b < dim; ++b) {
        if (b & cm) v[b] *= (b & tm) ? p1 : p0;
      }
      break;
    }
    case GateKind::rzz: {
      const std::size_t am = std::size_t{1} << g.qubits[0];
      const std::size_t bm = std::size_t{1} << g.qubits[1];
      const cd even = std::polar(1.0, -g.angle / 2.0);
      const cd odd = std::polar(1.0, g.angle / 2.0);
      for (std::size_t b = 0; b < dim; ++b) {
        v[b] *= (((b & am) != 0) != ((b & bm) != 0)) ? odd : even;
      }
      break;
    }
    case GateKind::clifford1: apply_1q(v, dim, g.qubits[0], clifford_matrix(g.clifford)); break;
    case GateKind::cnot: {
      const std::size_t cm = std::size_t{1} << g.qubits[0];
      const std::size_t tm = std::size_t{1} << g.qubits[1];
      for (std::size_t b = 0; b < dim; ++b) {
        if ((b & cm) && !(b & tm)) std::swap(v[b], v[b | tm]);
      }
      break;
    }
    case GateKind::global_phase: {
      const cd p = std::polar(1.0, g.angle);
      for (std::size_t b = 0; b < dim; ++b) v[b] *= p;
      break;
    }
  }
}

// Matrix element structure of a Pauli string: P|b> = amp(b) |b ^ x>.
struct PauliAction {
  std::uint64_t x;
  std::uint64_t z;
  cd base;  // phase * i^{|x & z|}
  cd amp(std::size_t b) const {
    return (std::popcount(z & b) % 2) ? -base : base;
  }
};

PauliAction action_of(const PauliString& p, cd coefficient) {
  const int y_count = std::popcount(p.x_mask() & p.z_mask());
  cd base = coefficient * to_complex(p.phase());
  for (int k = 0; k < (y_count & 3); ++k) base *= kI;
  return {p.x_mask(), p.z_mask(), base};
}

}  // namespace

DenseOperator pauli_matrix(const PauliString& p) {
  const std::size_t dim = dim_for(p.width());
  DenseOperator m = DenseOperator::Zero(static_cast<Eigen::Index>(dim),
                                        static_cast<Eigen::Index>(dim));
  const PauliAction a = action_of(p, 1.0);
  for (std::size_t b = 0; b < dim; ++b) {
    m(static_cast<Eigen::Index>(b ^ a.x), static_cast<Eigen::Index>(b)) = a.amp(b);
  }
  return m;
}

DenseOperator pauli_sum_matrix(const PauliSum& s) {
  const std::size_t dim = dim_for(s.width());
  DenseOperator m = DenseOperator::Zero(static_cast<Eigen::Index>(dim),
                                        static_cast<Eigen::Index>(dim));
  for (const auto& t : s.terms()) {
    const PauliAction a = action_of(t.string, t.coefficient);
    for (std::size_t b = 0; b < dim; ++b) {
      m(static_cast<Eigen::Index>(b ^ a.x), static_cast<Eigen::Index>(b)) += a.amp(b);
    }
  }
  return m;
}

void apply_gate(DenseOperator& u, std::size_t n_qubits, const Gate& g, MsConvention convention) {
  const std::size_t dim = dim_for(n_qubits);
  if (static_cast<std::size_t>(u.rows()) != dim) {
    throw DimensionError("operator row count does not match the qubit count");
  }
  for (std::size_t q : g.qubits) {
    if (q >= n_qubits) throw StructuralError(fmt::format("gate qubit {} out of range", q));
  }
  for (Eigen::Index c = 0; c < u.cols(); ++c) apply_to_vector(u.col(c).data(), dim, g, convention);
}

DenseOperator circuit_unitary(const Circuit& c, MsConvention convention) {
  const std::size_t dim = dim_for(c.n_qubits());
  DenseOperator u = DenseOperator::Identity(static_cast<Eigen::Index>(dim),
                                            static_cast<Eigen::Index>(dim));
  for (Eigen::Index col = 0; col < u.cols(); ++col) {
    cd* v = u.col(col).data();
    for (const Gate& g : c.gates()) apply_to_vector(v, dim, g, convention);
  }
  return u;
}

DenseOperator generator_unitary(const PauliSum& g, double angle) {
  const std::size_t dim = dim_for(g.width());
  const double residual = g.hermiticity_residual();
  if (residual > 1e-12) {
    throw NonHermitianError(
        fmt::format("generator has anti-Hermitian part of size {:.3g}", residual));
  }
  std::vector<PauliAction> actions;
  for (const auto& t : g.terms()) actions.push_back(action_of(t.string, t.coefficient.real()));

  // Basis states coupled by some term form independent blocks.
  std::vector<std::size_t> parent(dim);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (const auto& a : actions) {
    if (a.x == 0) continue;
    for (std::size_t b = 0; b < dim; ++b) {
      const std::size_t r1 = find(b);
      const std::size_t r2 = find(b ^ a.x);
      if (r1 != r2) parent[r1] = r2;
    }
  }
  std::vector<std::vector<std::size_t>> blocks(dim);
  for (std::size_t b = 0; b < dim; ++b) blocks[find(b)].push_back(b);

  DenseOperator u = DenseOperator::Zero(static_cast<Eigen::Index>(dim),
                                        static_cast<Eigen::Index>(dim));
  std::vector<Eigen::Index> local(dim, -1);
  for (const auto& block : blocks) {
    if (block.empty()) continue;
    const auto k = static_cast<Eigen::Index>(block.size());
    for (Eigen::Index i = 0; i < k; ++i) local[block[static_cast<std::size_t>(i)]] = i;
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(k, k);
    for (const auto& a : actions) {
      for (Eigen::Index i = 0; i < k; ++i) {
        const std::size_t b = block[static_cast<std::size_t>(i)];
        h(local[b ^ a.x], i) += a.amp(b);
      }
    }
    Eigen::MatrixXcd e;
    if (k == 1) {
      e = Eigen::MatrixXcd::Constant(1, 1, std::polar(1.0, -angle * h(0, 0).real()));
    } else {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
      const Eigen::VectorXd& w = solver.eigenvalues();
      Eigen::VectorXcd phases(k);
      for (Eigen::Index i = 0; i < k; ++i) phases(i) = std::polar(1.0, -angle * w(i));
      e = solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
    }
    for (Eigen::Index i = 0; i < k; ++i) {
      for (Eigen::Index j = 0; j < k; ++j) {
        u(static_cast<Eigen::Index>(block[static_cast<std::size_t>(i)]),
          static_cast<Eigen::Index>(block[static_cast<std::size_t>(j)])) = e(i, j);
      }
    }
  }
  return u;
}

EquivalenceVerdict assert_equivalent(const DenseOperator& u, const DenseOperator& v,
                                     EquivalenceMode mode, double tol) {
  if (u.rows() != v.rows() || u.cols() != v.cols()) {
    throw DimensionError(fmt::format("cannot compare {}x{} with {}x{}", u.rows(), u.cols(),
                                     v.rows(), v.cols()));
  }
  EquivalenceVerdict verdict;
  if (mode == EquivalenceMode::global_phase) {
    const cd overlap = v.conjugate().cwiseProduct(u).sum();  // tr(v^dagger u)
    if (std::abs(overlap) > 0.0) verdict.phase = overlap / std::abs(overlap);
  }
  verdict.distance = (u - verdict.phase * v).norm();
  verdict.pass = verdict.distance <= tol;
  return verdict;
}

double spectral_norm(const DenseOperator& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<DenseOperator> svd(m);
  return svd.singularValues()(0);
}

double unitarity_defect(const DenseOperator& u) {
  return (u.adjoint() * u - DenseOperator::Identity(u.rows(), u.cols())).norm();
}

}  // namespace msfermion
