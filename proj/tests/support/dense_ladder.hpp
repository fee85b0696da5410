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

// Test-only oracle: fermionic ladder matrices built straight from their action
// on occupation-number states, with no Pauli algebra involved.

#pragma once

#include <bit>
#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace msfermion::testing {

using Dense = Eigen::MatrixXcd;

inline Dense identity(std::size_t n) {
  const auto d = static_cast<Eigen::Index>(std::size_t{1} << n);
  return Dense::Identity(d, d);
}

/// a_p on n modes: |b> -> (-1)^{#occupied below p} |b - 2^p> when mode p is occupied.
inline Dense annihilator(std::size_t n, std::size_t p) {
  const std::size_t d = std::size_t{1} << n;
  Dense m = Dense::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  const std::size_t bit = std::size_t{1} << p;
  for (std::size_t b = 0; b < d; ++b) {
    if (!(b & bit)) continue;
    const int below = std::popcount(b & (bit - 1));
    m(static_cast<Eigen::Index>(b ^ bit), static_cast<Eigen::Index>(b)) = below % 2 ? -1.0 : 1.0;
  }
  return m;
}

inline Dense creator(std::size_t n, std::size_t p) { return annihilator(n, p).adjoint(); }

inline Dense number(std::size_t n, std::size_t p) { return creator(n, p) * annihilator(n, p); }

/// A = prod a^dagger_{c} prod a_{a} in the given order.
inline Dense ladder_product(std::size_t n, const std::vector<std::size_t>& creation,
                            const std::vector<std::size_t>& annihilation) {
  Dense m = identity(n);
  for (std::size_t c : creation) m = m * creator(n, c);
  for (std::size_t a : annihilation) m = m * annihilator(n, a);
  return m;
}

/// i(A - A^dagger) or A + A^dagger.
inline Dense generator(std::size_t n, const std::vector<std::size_t>& creation,
                       const std::vector<std::size_t>& annihilation, bool symmetrized) {
  const Dense a = ladder_product(n, creation, annihilation);
  if (symmetrized) return a + a.adjoint();
  return std::complex<double>(0.0, 1.0) * (a - a.adjoint());
}

/// exp(-i angle H) for Hermitian H via a full eigendecomposition.
inline Dense expm_hermitian(const Dense& h, double angle) {
  Eigen::SelfAdjointEigenSolver<Dense> es(h);
  Eigen::VectorXcd ph(h.rows());
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    ph(i) = std::polar(1.0, -angle * es.eigenvalues()(i));
  }
  return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace msfermion::testing
