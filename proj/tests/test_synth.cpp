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

#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "slr/error.hpp"
#include "slr/incoherence.hpp"
#include "slr/linalg.hpp"
#include "slr/norms.hpp"
#include "slr/synth.hpp"
#include "support.hpp"

using namespace slr;
using slr::test::max_abs_diff;

namespace {

InstanceSpec base_spec(std::size_t m, std::size_t n, std::size_t r, std::size_t k, std::uint64_t seed) {
  InstanceSpec s;
  s.m = m;
  s.n = n;
  s.rank = r;
  s.ktilde = k;
  s.seed = Seed{seed};
  return s;
}

}  // namespace

TEST_SUITE("synth") {
  TEST_CASE("uniform support draws") {
    CHECK(gen_support(10, 10, 0, Seed{1}).empty());
    CHECK(gen_support(7, 9, 40, Seed{2}).cells() == gen_support(7, 9, 40, Seed{2}).cells());
    CHECK(gen_support(7, 9, 40, Seed{2}).cells() != gen_support(7, 9, 40, Seed{3}).cells());
    CHECK(gen_support(4, 4, 1000, Seed{4}).size() == 16);

    // Expected number of distinct cells after k draws with replacement.
    const double mn = 100.0 * 100.0;
    const double expected = mn * (1.0 - std::pow(1.0 - 1.0 / mn, 500.0));
    double total = 0.0;
    for (std::uint64_t s = 0; s < 200; ++s) {
      const SupportSet sup = gen_support(100, 100, 500, Seed{s});
      CHECK(sup.size() <= 500);
      total += static_cast<double>(sup.size());
    }
    CHECK(std::fabs(total / 200.0 - expected) <= 0.02 * expected);
  }

  TEST_CASE("permutation support") {
    for (std::uint64_t s = 0; s < 20; ++s) {
      const SupportSet one = gen_permutation_support(30, 20, 30, Seed{s});
      CHECK(one.size() == 30);
      // One layer of a 30 x 20 grid puts at most ceil(30/20) = 2 cells in a column.
      CHECK(one.max_per_row() <= 1);
      CHECK(one.max_per_column() <= 2);
      const SupportSet two = gen_permutation_support(30, 30, 45, Seed{s});
      CHECK(two.max_per_row() <= 2);
      CHECK(two.max_per_column() <= 2);
    }
    const SupportSet rows = gen_row_block_support(6, 5, 2, Seed{3});
    CHECK(rows.size() == 10);
    CHECK(rows.max_per_row() == 5);
    CHECK_THROWS_AS(gen_row_block_support(6, 5, 7, Seed{3}), ParameterError);
  }

  TEST_CASE("random subspaces") {
    const RowColSpace e = gen_subspaces(8, 6, 0, Seed{1});
    CHECK(e.rank() == 0);
    CHECK(e.U().rows() == 8);
    CHECK(e.V().rows() == 6);
    CHECK_THROWS_AS(gen_subspaces(3, 4, 4, Seed{1}), ParameterError);
    for (std::uint64_t s = 0; s < 20; ++s) {
      const RowColSpace g = gen_subspaces(25, 18, 1 + s % 5, Seed{s});
      CHECK(orthonormality_defect(g.U()) <= 1e-10);
      CHECK(orthonormality_defect(g.V()) <= 1e-10);
      const RowColSpace f = gen_flat_subspaces(16, 16, 1 + s % 3, Seed{s});
      CHECK(orthonormality_defect(f.U()) <= 1e-10);
      CHECK(orthonormality_defect(f.V()) <= 1e-10);
    }
    // A single sign vector normalizes to entries of magnitude exactly 1/sqrt(m).
    const RowColSpace flat = gen_flat_subspaces(16, 9, 1, Seed{8});
    CHECK(norm_vinf(flat.U()) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(norm_vinf(flat.V()) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  }

  TEST_CASE("coherence envelope") {
    std::vector<double> scaled;
    for (std::uint64_t s = 0; s < 50; ++s) {
      const RowColSpace g = gen_subspaces(200, 200, 4, Seed{s});
      scaled.push_back(norm_vinf(matmul_nt(g.U(), g.U())) * 200.0 / 4.0);
    }
    std::nth_element(scaled.begin(), scaled.begin() + 25, scaled.end());
    const double median = scaled[25];
    CHECK(median >= 0.5);
    CHECK(median <= 20.0);
  }

  TEST_CASE("noiseless instances") {
    const GeneratedInstance g = gen_instance(base_spec(20, 15, 2, 30, 11));
    CHECK(g.E == Matrix(20, 15));
    CHECK(g.stats.eps_2to2 == 0.0);
    CHECK(g.stats.eps_vinf == 0.0);
    CHECK(g.stats.eps_star_prime == 0.0);
    CHECK(g.Y == g.target.sparse + g.target.lowrank);
  }

  TEST_CASE("instance structure") {
    for (std::uint64_t s = 0; s < 20; ++s) {
      InstanceSpec spec = base_spec(18 + s % 5, 14 + s % 7, 1 + s % 3, 5 + 3 * s, 100 + s);
      spec.sigma = s % 2 == 0 ? 0.01 : 0.0;
      spec.magnitude = s % 3 == 0 ? MagnitudeLaw::uniform_dead_zone : MagnitudeLaw::fixed_sign;
      const GeneratedInstance g = gen_instance(spec);
      CHECK(g.Y == g.target.sparse + g.target.lowrank + g.E);
      CHECK(SupportSet::of_nonzeros(g.target.sparse).cells() == g.target.support.cells());
      CHECK(g.target.support.size() <= spec.ktilde);
      for (const Cell& c : g.target.support.cells()) {
        const double x = std::fabs(g.target.sparse(c.row, c.col));
        CHECK(x >= 0.1 * spec.amplitude);
        CHECK(x <= spec.amplitude);
      }
      CHECK(g.target.space.rank() == spec.rank);
      const std::vector<double> sv = singular_values(g.target.lowrank);
      const double scale = std::sqrt(static_cast<double>(spec.m * spec.n)) / static_cast<double>(spec.rank);
      for (std::size_t i = 0; i < spec.rank; ++i) {
        CHECK(sv[i] >= scale * (1.0 - 1e-12));
        CHECK(sv[i] <= 2.0 * scale * (1.0 + 1e-12));
      }
      const PerturbationStats ps = perturbation_stats(g.target.space, g.E);
      CHECK(ps.eps_2to2 == doctest::Approx(g.stats.eps_2to2).epsilon(1e-12));
      CHECK(ps.eps_vinf == doctest::Approx(g.stats.eps_vinf).epsilon(1e-12));
    }
  }

  TEST_CASE("reproducibility") {
    InstanceSpec spec = base_spec(15, 12, 2, 20, 77);
    spec.sigma = 0.1;
    const GeneratedInstance a = gen_instance(spec);
    const GeneratedInstance b = gen_instance(spec);
    CHECK(a.Y == b.Y);
    CHECK(a.E == b.E);
    CHECK(a.target.sparse == b.target.sparse);
    CHECK(a.target.lowrank == b.target.lowrank);
    CHECK(a.profile.product == b.profile.product);
    spec.seed = Seed{78};
    CHECK(gen_instance(spec).Y != a.Y);
  }

  TEST_CASE("invalid specs") {
    CHECK_THROWS_AS(gen_instance(base_spec(0, 5, 0, 0, 1)), ParameterError);
    CHECK_THROWS_AS(gen_instance(base_spec(4, 5, 5, 0, 1)), ParameterError);
    InstanceSpec s = base_spec(4, 5, 1, 2, 1);
    s.sigma = -1.0;
    CHECK_THROWS_AS(gen_instance(s), ParameterError);
    s.sigma = 0.0;
    s.amplitude = 0.0;
    CHECK_THROWS_AS(gen_instance(s), ParameterError);
  }

  TEST_CASE("noise envelopes") {
    const double sigma = 0.01;
    const double m = 100.0, n = 100.0;
    int spectral_ok = 0, entry_ok = 0;
    for (std::uint64_t s = 0; s < 100; ++s) {
      InstanceSpec spec = base_spec(100, 100, 1, 0, 500 + s);
      spec.sigma = sigma;
      const GeneratedInstance g = gen_instance(spec);
      if (g.stats.eps_2to2 <= sigma * (std::sqrt(m) + std::sqrt(n)) + 6.0 * sigma) ++spectral_ok;
      if (norm_vinf(g.E) <= 5.0 * sigma * std::sqrt(std::log(m * n))) ++entry_ok;
    }
    CHECK(spectral_ok >= 95);
    CHECK(entry_ok >= 95);
  }

  TEST_CASE("incoherence bounds from row and column counts hold on generated instances") {
    for (std::uint64_t s = 0; s < 30; ++s) {
      InstanceSpec spec = base_spec(20 + s % 11, 15 + s % 13, 1 + s % 3, 10 + 7 * s, 900 + s);
      spec.subspaces = s % 2 == 0 ? SubspaceLaw::gaussian : SubspaceLaw::sign_flat;
      spec.support = s % 3 == 0 ? SupportLaw::permutations : SupportLaw::uniform_draws;
      const GeneratedInstance g = gen_instance(spec);
      const IncoherenceProfile& p = g.profile;
      const Prop1Bounds b = proposition1_bounds(p.m, p.n, p.rank, p.m0, p.n0, norm_vinf(g.target.space.U()),
                                                norm_vinf(g.target.space.V()));
      CHECK(p.alpha(b.rho) <= b.alpha_bound * (1 + 1e-12));
      CHECK(p.beta(b.rho) <= b.beta_bound * (1 + 1e-12));
      CHECK(p.gamma <= b.gamma_bound * (1 + 1e-12));
    }
  }

  TEST_CASE("identifiability rate at 60 x 60 with 5% density" * doctest::should_fail()) {
    // Recorded as a known failure: at this size the coherence of Gaussian
    // subspaces alone pushes alpha*beta well above one.
    int identifiable = 0;
    for (std::uint64_t s = 0; s < 50; ++s) {
      if (check_identifiability(gen_instance(base_spec(60, 60, 2, 180, s)).profile)) ++identifiable;
    }
    MESSAGE("identifiable on " << identifiable << " of 50 seeds");
    CHECK(identifiable >= 45);
  }
}
