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

// Test-only bridges from library value types to the ladder oracle. Nothing
// here calls the library's own matrix code.

#pragma once

#include <complex>
#include <cstddef>
#include <random>
#include <vector>

#include "dense_ladder.hpp"
#include "msfermion/fermion.hpp"
#include "msfermion/hamiltonian.hpp"
#include "msfermion/pauli.hpp"

namespace msfermion::testing {

/// Matrix of a Pauli string from its action on basis states.
inline Dense pauli_dense(const PauliString& p) {
  const std::size_t n = p.width();
  const std::size_t d = std::size_t{1} << n;
  Dense m = Dense::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  const std::complex<double> i(0.0, 1.0);
  for (std::size_t b = 0; b < d; ++b) {
    std::complex<double> amp = to_complex(p.phase());
    for (std::size_t k = 0; k < n; ++k) {
      const bool one = (b >> k) & 1U;
      switch (p.letter(k)) {
        case Pauli::I:
        case Pauli::X: break;
        case Pauli::Z: amp *= one ? -1.0 : 1.0; break;
        case Pauli::Y: amp *= one ? -i : i; break;
      }
    }
    m(static_cast<Eigen::Index>(b ^ p.x_mask()), static_cast<Eigen::Index>(b)) = amp;
  }
  return m;
}

inline Dense pauli_sum_dense(const PauliSum& s) {
  Dense m = Dense::Zero(static_cast<Eigen::Index>(std::size_t{1} << s.width()),
                        static_cast<Eigen::Index>(std::size_t{1} << s.width()));
  for (const auto& t : s.terms()) {
    const Dense p = pauli_dense(t.string);
    m += t.coefficient * p;
  }
  return m;
}

/// coefficient * G (or G~) of an excitation term, from ladder matrices.
inline Dense term_dense(const ExcitationTerm& t, std::size_t n) {
  std::vector<std::size_t> c = t.creation;
  std::vector<std::size_t> a = t.annihilation;
  if (t.kind == ExcitationKind::controlled_single) {
    c.push_back(t.control);
    a.push_back(t.control);
  }
  const Dense g = generator(n, c, a, t.symmetrized);
  return t.coefficient * g;
}

inline Dense local_dense(const LocalTerm& t, std::size_t n) {
  if (t.kind == LocalTerm::Kind::density) {
    const Dense np = number(n, t.p);
    return 2.0 * t.coefficient * np;
  }
  const Dense npq = number(n, t.p) * number(n, t.q);
  return -2.0 * t.coefficient * npq;
}

/// c + sum_pq h_pq a_p^dagger a_q + 1/2 sum_pqrs h_pqrs a_p^dagger a_q^dagger a_r a_s,
/// summed over every index tuple through the table's lookup.
inline Dense table_dense(const IntegralTable& t) {
  const std::size_t n = t.n_modes();
  Dense h = t.constant() * identity(n);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      const std::complex<double> v = t.one_body(p, q);
      if (v != 0.0) h += v * ladder_product(n, {p}, {q});
    }
  }
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t s = 0; s < n; ++s) {
          const std::complex<double> v = t.two_body(p, q, r, s);
          if (v != 0.0) h += 0.5 * v * ladder_product(n, {p, q}, {r, s});
        }
      }
    }
  }
  return h;
}

inline Dense termlist_dense(const HamiltonianTermList& h) {
  Dense m = h.constant * identity(h.n_modes);
  for (const auto& t : h.local) m += local_dense(t, h.n_modes);
  for (const auto& t : h.excitations) m += term_dense(t, h.n_modes);
  return m;
}

/// Random table obeying the declared symmetry: values are set on random tuples
/// and the table's orbit machinery fills in the rest.
inline IntegralTable random_table(std::size_t n, Reality reality, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<std::size_t> mode(0, n - 1);
  IntegralTable t(n, reality);
  t.set_constant(u(rng));
  const bool cplx = reality == Reality::complex;
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = p; q < n; ++q) {
      t.set_one_body(p, q, {u(rng), (cplx && p != q) ? u(rng) : 0.0});
    }
  }
  for (std::size_t k = 0; k < 6 * n; ++k) {
    const std::size_t p = mode(rng), q = mode(rng), r = mode(rng), s = mode(rng);
    // Skip tuples already fixed by an earlier draw; their orbit is settled.
    if (t.two_body(p, q, r, s) != 0.0) continue;
    std::complex<double> v(u(rng), cplx ? u(rng) : 0.0);
    // Orbits that contain their own conjugate partner need a real value.
    if ((p == r && q == s) || (p == s && q == r)) v = v.real();
    if (p == q && r == s) v = v.real();
    try {
      t.set_two_body(p, q, r, s, v);
    } catch (const std::exception&) {
      t.set_two_body(p, q, r, s, v.real());
    }
  }
  return t;
}

}  // namespace msfermion::testing
