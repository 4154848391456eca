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

#include "slr/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "slr/error.hpp"
#include "slr/linalg.hpp"

namespace slr {

namespace {

// Independent sub-streams of one instance seed.
Seed substream(Seed seed, std::uint64_t tag) { return Seed{mix64(seed.value ^ mix64(tag))}; }

std::vector<std::size_t> permutation(std::size_t n, Rng& rng) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[rng.below(i)]);
  return p;
}

void require_grid(std::size_t m, std::size_t n, const char* who) {
  if (m == 0 || n == 0) throw ParameterError(std::string(who) + ": dimensions must be positive");
}

}  // namespace

SupportSet gen_support(std::size_t m, std::size_t n, std::size_t ktilde, Seed seed) {
  require_grid(m, n, "gen_support");
  Rng rng(seed);
  std::vector<Cell> cells;
  cells.reserve(ktilde);
  for (std::size_t k = 0; k < ktilde; ++k) {
    const std::size_t flat = rng.below(m * n);
    cells.push_back({flat / n, flat % n});
  }
  return SupportSet(m, n, std::move(cells));
}

SupportSet gen_permutation_support(std::size_t m, std::size_t n, std::size_t ktilde, Seed seed) {
  require_grid(m, n, "gen_permutation_support");
  Rng rng(seed);
  const std::size_t layer = std::max(m, n);
  std::vector<Cell> cells;
  cells.reserve(ktilde);
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
  for (std::size_t k = 0; k < ktilde; ++k) {
    const std::size_t idx = k % layer;
    if (idx == 0) {
      rows = permutation(m, rng);
      cols = permutation(n, rng);
    }
    cells.push_back({rows[idx % m], cols[idx % n]});
  }
  return SupportSet(m, n, std::move(cells));
}

SupportSet gen_row_block_support(std::size_t m, std::size_t n, std::size_t k, Seed seed) {
  require_grid(m, n, "gen_row_block_support");
  if (k > m) throw ParameterError("gen_row_block_support: k exceeds the number of rows");
  Rng rng(seed);
  const std::vector<std::size_t> rows = permutation(m, rng);
  std::vector<Cell> cells;
  cells.reserve(k * n);
  for (std::size_t t = 0; t < k; ++t) {
    for (std::size_t j = 0; j < n; ++j) cells.push_back({rows[t], j});
  }
  return SupportSet(m, n, std::move(cells));
}

RowColSpace gen_subspaces(std::size_t m, std::size_t n, std::size_t r, Seed seed) {
  require_grid(m, n, "gen_subspaces");
  if (r > std::min(m, n)) throw ParameterError("gen_subspaces: rank exceeds min(m, n)");
  if (r == 0) return RowColSpace::empty(m, n);
  Rng rng(seed);
  Matrix U = orthonormalize(gaussian_matrix(m, r, rng));
  Matrix V = orthonormalize(gaussian_matrix(n, r, rng));
  return RowColSpace(std::move(U), std::move(V));
}

RowColSpace gen_flat_subspaces(std::size_t m, std::size_t n, std::size_t r, Seed seed) {
  require_grid(m, n, "gen_flat_subspaces");
  if (r > std::min(m, n)) throw ParameterError("gen_flat_subspaces: rank exceeds min(m, n)");
  if (r == 0) return RowColSpace::empty(m, n);
  Rng rng(seed);
  // Independent sign vectors can coincide for tiny dimensions; redraw then.
  auto signs = [&](std::size_t rows) {
    for (int attempt = 0;; ++attempt) {
      Matrix A(rows, r);
      for (double& x : A.values()) x = rng.sign();
      try {
        return orthonormalize(A);
      } catch (const FactorizationError&) {
        if (attempt >= 100) throw;
      }
    }
  };
  Matrix U = signs(m);
  Matrix V = signs(n);
  return RowColSpace(std::move(U), std::move(V));
}

GeneratedInstance gen_instance(const InstanceSpec& spec) {
  require_grid(spec.m, spec.n, "gen_instance");
  if (spec.rank > std::min(spec.m, spec.n)) throw ParameterError("gen_instance: rank exceeds min(m, n)");
  if (!(spec.sigma >= 0.0) || !std::isfinite(spec.sigma)) throw ParameterError("gen_instance: sigma must be >= 0");
  if (!(spec.amplitude > 0.0) || !std::isfinite(spec.amplitude)) {
    throw ParameterError("gen_instance: amplitude must be positive");
  }
  const std::size_t m = spec.m;
  const std::size_t n = spec.n;

  const SupportSet support = spec.support == SupportLaw::uniform_draws
                                 ? gen_support(m, n, spec.ktilde, substream(spec.seed, 1))
                                 : gen_permutation_support(m, n, spec.ktilde, substream(spec.seed, 1));
  const RowColSpace space = spec.subspaces == SubspaceLaw::gaussian
                                ? gen_subspaces(m, n, spec.rank, substream(spec.seed, 2))
                                : gen_flat_subspaces(m, n, spec.rank, substream(spec.seed, 2));

  Rng values(substream(spec.seed, 3));
  Matrix sparse(m, n);
  for (const Cell& c : support.cells()) {
    const double sign = values.sign();
    const double mag = spec.magnitude == MagnitudeLaw::fixed_sign
                           ? spec.amplitude
                           : values.uniform(0.1 * spec.amplitude, spec.amplitude);
    sparse(c.row, c.col) = sign * mag;
  }

  Matrix lowrank(m, n);
  if (spec.rank > 0) {
    const double scale = std::sqrt(static_cast<double>(m) * static_cast<double>(n)) / static_cast<double>(spec.rank);
    std::vector<double> s(spec.rank);
    for (double& x : s) x = values.uniform(1.0, 2.0) * scale;
    std::sort(s.begin(), s.end(), std::greater<>());
    lowrank = SvdFactors{space.U(), s, space.V()}.reconstruct();
  }

  Matrix E = spec.sigma > 0.0 ? gaussian_matrix(m, n, substream(spec.seed, 4)) * spec.sigma : Matrix(m, n);

  GeneratedInstance inst;
  inst.Y = sparse + lowrank + E;
  inst.target = TargetPair::of(std::move(sparse), std::move(lowrank));
  inst.E = std::move(E);
  inst.profile = profile(inst.target);
  inst.stats = perturbation_stats(inst.target.space, inst.E);
  return inst;
}

}  // namespace slr
