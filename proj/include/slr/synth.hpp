// Copyright (c) 2026 The slr Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>

#include "slr/certificate.hpp"
#include "slr/incoherence.hpp"
#include "slr/rng.hpp"
#include "slr/subspaces.hpp"

namespace slr {

/// Distribution of the nonzero entries of the sparse component.
enum class MagnitudeLaw {
  fixed_sign,        // +-amplitude with random sign
  uniform_dead_zone  // random sign times uniform magnitude in [0.1 amplitude, amplitude]
};

/// How the singular subspaces are drawn.
enum class SubspaceLaw {
  gaussian,   // orthonormalized Gaussian: uniform over orthonormal families
  sign_flat   // orthonormalized random +-1 vectors: exactly flat for rank 1
};

/// How the support is drawn.
enum class SupportLaw {
  uniform_draws,  // ktilde cells drawn uniformly with replacement
  permutations    // ktilde cells laid out along random permutation patterns
};

struct InstanceSpec {
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t rank = 0;
  std::size_t ktilde = 0;
  MagnitudeLaw magnitude = MagnitudeLaw::fixed_sign;
  double amplitude = 10.0;
  double sigma = 0.0;
  Seed seed{};
  SubspaceLaw subspaces = SubspaceLaw::gaussian;
  SupportLaw support = SupportLaw::uniform_draws;
};

struct GeneratedInstance {
  Matrix Y;
  TargetPair target;
  Matrix E;
  IncoherenceProfile profile;
  PerturbationStats stats;
};

/// ktilde uniform draws with replacement over the m x n grid, collapsed.
SupportSet gen_support(std::size_t m, std::size_t n, std::size_t ktilde, Seed seed);

/// ktilde cells taken in layers of max(m, n); each layer pairs a random row
/// permutation with a random column permutation, so every layer adds at most
/// ceil(max(m,n)/min(m,n)) cells to any row or column. Collisions collapse.
SupportSet gen_permutation_support(std::size_t m, std::size_t n, std::size_t ktilde, Seed seed);

/// All cells of k randomly chosen rows (a coherent support for stress tests).
SupportSet gen_row_block_support(std::size_t m, std::size_t n, std::size_t k, Seed seed);

/// Orthonormalized Gaussian bases (positive-diagonal QR convention).
RowColSpace gen_subspaces(std::size_t m, std::size_t n, std::size_t r, Seed seed);

/// Orthonormalized random sign vectors.
RowColSpace gen_flat_subspaces(std::size_t m, std::size_t n, std::size_t r, Seed seed);

/// Y = X_S + X_L + E with X_L = U diag(s) V^T, s uniform in [1, 2] sqrt(mn)/r,
/// X_S drawn on the support per the magnitude law and E i.i.d. N(0, sigma^2).
/// Throws ParameterError on an invalid spec.
GeneratedInstance gen_instance(const InstanceSpec& spec);

}  // namespace slr
