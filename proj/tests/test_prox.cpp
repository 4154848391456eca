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

#include <cmath>

#include "doctest.h"
#include "slr/error.hpp"
#include "slr/linalg.hpp"
#include "slr/norms.hpp"
#include "slr/prox.hpp"
#include "support.hpp"

using namespace slr;
using slr::test::frob;
using slr::test::max_abs_diff;

namespace {

// Minimizer of 1/2 (x - v)^2 + t |x| over [lo, hi] by comparing every
// candidate stationary point and endpoint.
double scalar_prox_oracle(double v, double t, double lo, double hi) {
  auto f = [&](double x) { return 0.5 * (x - v) * (x - v) + t * std::fabs(x); };
  double best = lo, fbest = f(lo);
  for (double x : {hi, 0.0, v - t, v + t}) {
    const double c = std::clamp(x, lo, hi);
    if (f(c) < fbest) {
      best = c;
      fbest = f(c);
    }
  }
  return best;
}

}  // namespace

TEST_SUITE("prox") {
  TEST_CASE("soft threshold") {
    const Matrix M = Matrix::from_rows({{1, -2}, {3, 4}});
    CHECK(soft_threshold(M, 2.0) == Matrix::from_rows({{0, 0}, {1, 2}}));
    CHECK(soft_threshold(M, 0.0) == M);
    CHECK_THROWS_AS(soft_threshold(M, -1.0), ParameterError);

    Rng rng(Seed{41});
    for (int t = 0; t < 50; ++t) {
      const Matrix V = slr::test::random_matrix(4, 5, rng, 3.0);
      const double th = 2.0 * rng.uniform();
      const Matrix X = soft_threshold(V, th);
      for (std::size_t k = 0; k < V.size(); ++k) {
        const double x = X.data()[k], v = V.data()[k];
        if (x > 0) {
          CHECK(std::fabs(x - v + th) <= 1e-12);
        } else if (x < 0) {
          CHECK(std::fabs(x - v - th) <= 1e-12);
        } else {
          CHECK(std::fabs(v) <= th + 1e-12);
        }
      }
    }
  }

  TEST_CASE("singular value thresholding") {
    CHECK(max_abs_diff(svt(Matrix::diagonal({5, 1}), 2.0), Matrix::diagonal({3, 0})) <= 1e-14);
    CHECK(max_abs_diff(svt(Matrix::from_rows({{0, 3}, {3, 0}}), 1.0), Matrix::from_rows({{0, 2}, {2, 0}})) <= 1e-13);
    Rng rng(Seed{42});
    const Matrix M = slr::test::random_matrix(5, 3, rng);
    CHECK(svt(M, slr::test::oracle_spectral_norm(M) * 1.0001) == Matrix(5, 3));
    CHECK_THROWS_AS(svt(M, -0.1), ParameterError);
  }

  TEST_CASE("svt optimality") {
    Rng rng(Seed{43});
    for (int t = 0; t < 40; ++t) {
      const std::size_t m = 2 + rng.below(8), n = 2 + rng.below(8);
      const Matrix V = slr::test::random_matrix(m, n, rng);
      const double tau = rng.uniform() * slr::test::oracle_spectral_norm(V);
      const Matrix X = svt(V, tau);
      // (V - X)/tau must be a subgradient of the trace norm at X:
      // its tangent part equals orth(X) and its 2->2 norm is at most 1.
      const Matrix G = (V - X) * (1.0 / tau);
      const RowColSpace sx = RowColSpace::of_matrix(X);
      CHECK(max_abs_diff(project_T(sx, G), orth_matrix(sx)) <= 1e-9);
      CHECK(spectral_norm(G) <= 1.0 + 1e-9);
    }
  }

  TEST_CASE("svt commutes with orthogonal rotations") {
    Rng rng(Seed{44});
    for (int t = 0; t < 20; ++t) {
      const std::size_t m = 2 + rng.below(7), n = 2 + rng.below(7);
      const Matrix M = slr::test::random_matrix(m, n, rng);
      const Matrix Ql = slr::test::random_orthogonal(m, rng);
      const Matrix Qr = slr::test::random_orthogonal(n, rng);
      const double tau = rng.uniform() * 2.0;
      const Matrix lhs = svt(matmul_nt(matmul(Ql, M), Qr), tau);
      const Matrix rhs = matmul_nt(matmul(Ql, svt(M, tau)), Qr);
      CHECK(max_abs_diff(lhs, rhs) <= 1e-8);
    }
  }

  TEST_CASE("l1 prox with a box") {
    Rng rng(Seed{45});
    const Matrix V = slr::test::random_matrix(3, 4, rng, 3.0);
    CHECK(prox_l1_box(V, Matrix(3, 4), 0.5, kUnbounded) == soft_threshold(V, 0.5));
    CHECK(prox_l1_box(Matrix(1, 1, 5.0), Matrix(1, 1), 1.0, 2.0)(0, 0) == 2.0);
    CHECK(prox_l1_box(Matrix(1, 1, 0.3), Matrix(1, 1, 0.5), 0.0, 1.0)(0, 0) == 0.3);
    CHECK_THROWS_AS(prox_l1_box(V, Matrix(3, 4), 0.5, 0.0), ParameterError);
    CHECK_THROWS_AS(prox_l1_box(V, Matrix(3, 3), 0.5, 1.0), DimensionError);

    for (int t = 0; t < 50; ++t) {
      const Matrix v = slr::test::random_matrix(3, 3, rng, 3.0);
      const Matrix c = slr::test::random_matrix(3, 3, rng, 2.0);
      const double th = rng.uniform() * 2.0;
      const double b = 0.1 + rng.uniform() * 3.0;
      const Matrix x = prox_l1_box(v, c, th, b);
      for (std::size_t k = 0; k < x.size(); ++k) {
        const double ref = scalar_prox_oracle(v.data()[k], th, c.data()[k] - b, c.data()[k] + b);
        CHECK(std::fabs(x.data()[k] - ref) <= 1e-12);
      }
    }
  }

  TEST_CASE("entry clipping") {
    const Matrix M = Matrix::from_rows({{10, -10}, {0.5, 0}});
    CHECK(clip_entries(M, 1.0) == Matrix::from_rows({{1, -1}, {0.5, 0}}));
    CHECK(clip_entries(clip_entries(M, 1.0), 1.0) == clip_entries(M, 1.0));
    CHECK_THROWS_AS(clip_entries(M, 0.0), ParameterError);
    Rng rng(Seed{46});
    for (int t = 0; t < 50; ++t) {
      const double b = 0.5 + rng.uniform();
      const Matrix Xbar = clip_entries(slr::test::random_matrix(4, 4, rng), b);
      const Matrix Mx = Xbar + slr::test::random_matrix(4, 4, rng, 2.0);
      CHECK(norm_v1(clip_entries(Mx, b) - Xbar) <= norm_v1(Mx - Xbar) + 1e-12);
    }
  }

  TEST_CASE("l1 ball projection") {
    const Matrix p = project_l1_ball(Matrix::from_rows({{3, 1}}), 2.0);
    CHECK(max_abs_diff(p, Matrix::from_rows({{2, 0}})) <= 1e-15);
    const Matrix small = Matrix::from_rows({{0.2, -0.3}});
    CHECK(project_l1_ball(small, 1.0) == small);
    CHECK(project_l1_ball(small, 0.0) == Matrix(1, 2));
    CHECK_THROWS_AS(project_l1_ball(small, -1.0), ParameterError);

    Rng rng(Seed{47});
    for (int t = 0; t < 50; ++t) {
      const Matrix A = slr::test::random_matrix(4, 5, rng, 2.0);
      const Matrix B = slr::test::random_matrix(4, 5, rng, 2.0);
      const double eps = rng.uniform() * 10.0;
      const Matrix PA = project_l1_ball(A, eps);
      CHECK(norm_v1(PA) <= eps * (1 + 1e-12) + 1e-15);
      CHECK(max_abs_diff(project_l1_ball(PA, eps), PA) <= 1e-12);
      CHECK(frob(PA - project_l1_ball(B, eps)) <= frob(A - B) + 1e-12);
      // Variational inequality <A - P(A), X - P(A)> <= 0 for feasible X.
      const Matrix X = project_l1_ball(slr::test::random_matrix(4, 5, rng, 2.0), eps);
      CHECK(frobenius_inner(A - PA, X - PA) <= 1e-10);
    }
  }

  TEST_CASE("nuclear ball projection") {
    CHECK(max_abs_diff(project_nuclear_ball(Matrix::diagonal({3, 1}), 2.0), Matrix::diagonal({2, 0})) <= 1e-14);
    Rng rng(Seed{48});
    const Matrix M = slr::test::random_matrix(3, 4, rng);
    CHECK(max_abs_diff(project_nuclear_ball(M, trace_norm(M) + 1.0), M) <= 1e-9);
    CHECK(project_nuclear_ball(M, 0.0) == Matrix(3, 4));

    for (int t = 0; t < 40; ++t) {
      const Matrix A = slr::test::random_matrix(5, 4, rng, 2.0);
      const Matrix B = slr::test::random_matrix(5, 4, rng, 2.0);
      const double eps = rng.uniform() * 8.0;
      const Matrix PA = project_nuclear_ball(A, eps);
      CHECK(trace_norm(PA) <= eps * (1 + 1e-10) + 1e-12);
      CHECK(max_abs_diff(project_nuclear_ball(PA, eps), PA) <= 1e-9);
      CHECK(frob(PA - project_nuclear_ball(B, eps)) <= frob(A - B) + 1e-10);
      const Matrix X = project_nuclear_ball(slr::test::random_matrix(5, 4, rng, 2.0), eps);
      CHECK(frobenius_inner(A - PA, X - PA) <= 1e-9);
    }
  }
}
