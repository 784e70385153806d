// Copyright 2026 The pseudoprob Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>

#include "pseudoprob/linalg.hpp"

namespace pseudoprob {

using Rng = std::mt19937_64;

/// Deterministic generator for a (seed, stream) pair; streams let parallel
/// workers draw independent sequences from one user seed.
Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0);

Vector3 random_unit_vector(Rng& rng);

/// Haar-distributed unitary via QR of a complex Ginibre matrix.
ComplexMatrix random_unitary(int dim, Rng& rng);

/// Haar-distributed element of SO(3), or of O(3) when reflections are
/// allowed (each component with probability 1/2).
Matrix3 random_orthogonal(Rng& rng, bool allow_reflection = true);

}  // namespace pseudoprob
