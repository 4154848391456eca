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

#include <array>
#include <cstdint>

#include "slr/matrix.hpp"

namespace slr {

/// Strong type for generator seeds.
struct Seed {
  std::uint64_t value = 0;
  friend bool operator==(Seed, Seed) = default;
};

/// SplitMix64 step; also used as a 64-bit mixing hash.
std::uint64_t splitmix64(std::uint64_t& state) noexcept;
std::uint64_t mix64(std::uint64_t x) noexcept;

/// xoshiro256** seeded through SplitMix64.
///
/// The stream is fully specified: uniform doubles take the top 53 bits,
/// bounded integers use rejection on the top bits (no modulo bias), and
/// normal variates use the Marsaglia polar method, consuming uniforms in
/// pairs and caching the second variate. Identical seeds give identical
/// streams on every platform whose libm log() is correctly rounded.
class Rng {
 public:
  explicit Rng(Seed seed) noexcept;

  std::uint64_t next_u64() noexcept;
  /// Uniform on [0, 1).
  double uniform() noexcept;
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) noexcept;
  /// Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound) noexcept;
  double normal() noexcept;
  /// Random sign, +1 or -1 with equal probability.
  double sign() noexcept;

 private:
  std::array<std::uint64_t, 4> s_{};
  double cached_normal_ = 0.0;
  bool has_cached_ = false;
};

/// m x n matrix of i.i.d. standard normal entries, filled row-major.
Matrix gaussian_matrix(std::size_t m, std::size_t n, Seed seed);
Matrix gaussian_matrix(std::size_t m, std::size_t n, Rng& rng);

}  // namespace slr
