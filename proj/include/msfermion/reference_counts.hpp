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

// Published MS-gate counts for the H3+ (STO-3G) examples, printed next to the
// recomputed numbers by the demos. The demos never use these to produce output counts.
namespace msfermion::reference {

/// UCCSD layer from |110000>: 4 singles and 4 doubles.
inline constexpr std::size_t kH3plusUccsdMs = 24;
inline constexpr std::size_t kH3plusUccsdBaselineMs = 80;
inline constexpr double kH3plusUccsdFactor = 3.3;

/// Non-local part of one Trotter step of the listed Hamiltonian.
inline constexpr std::size_t kH3plusTrotterMs = 26;
inline constexpr std::size_t kH3plusTrotterStringMs = 56;
inline constexpr std::size_t kH3plusTrotterNaiveMs = 176;
inline constexpr double kH3plusTrotterFactor = 2.2;

/// Per-block contracts.
inline constexpr std::size_t kSingleMs = 2;
inline constexpr std::size_t kSingleBaselineMs = 4;
inline constexpr std::size_t kDoubleMs = 4;
inline constexpr std::size_t kDoubleBaselineMs = 16;
inline constexpr std::size_t kControlledMsVariantA = 2;
inline constexpr std::size_t kControlledMsVariantB = 4;
inline constexpr std::size_t kMixedCnotMs = 2;

}  // namespace msfermion::reference
