// Copyright 2026 The shiftbound Authors
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

#ifndef SHIFTBOUND_RANDOM_HPP
#define SHIFTBOUND_RANDOM_HPP

#include <cstdint>
#include <random>

#include "shiftbound/distribution.hpp"
#include "shiftbound/generator.hpp"
#include "shiftbound/povm.hpp"
#include "shiftbound/state.hpp"

namespace shiftbound {

using Rng = std::mt19937_64;

/// Per-trial seed derived from a master seed (splitmix64 step), so that
/// parallel suites replay deterministically.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

Vec random_pure_ket(Rng& rng, int dim);
DensityOperator random_pure(Rng& rng, int dim);
/// Ginibre-induced mixed state of the given rank.
DensityOperator random_density(Rng& rng, int dim, int rank);
Mat random_unitary(Rng& rng, int dim);

/// Haar-random unitary columns grouped into k elements, optionally blended
/// with a random PSD perturbation and renormalized to completeness.
Povm random_finite_povm(Rng& rng, int dim, int elements, double perturbation = 0.2);

/// Random rank-1 POVM with `elements` subnormalized kets (complete).
Povm random_rank1_povm(Rng& rng, int dim, int elements);

/// Smooth random parameter-valued POVM on a periodic grid: a band-limited
/// random operator field T(x) T(x)^dag, completeness-normalized.
Povm random_grid_povm(Rng& rng, int dim, const UniformGrid& grid, int band = 3);

/// Smooth random prior on a periodic grid: exp of a band-limited field.
GriddedDistribution random_smooth_prior(Rng& rng, const UniformGrid& grid, int band = 3);

/// Random integer-spectrum generator: eigenvalues drawn from 0..max_level
/// (repeats allowed when degeneracy is on), random eigenbasis.
Generator random_integer_generator(Rng& rng, int dim, int max_level, bool allow_degeneracy);

}  // namespace shiftbound

#endif  // SHIFTBOUND_RANDOM_HPP
