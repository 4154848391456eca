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

#include "slr/norms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "slr/error.hpp"
#include "slr/kernels.hpp"
#include "slr/linalg.hpp"
#include "slr/simplex.hpp"

namespace slr {

double entrywise_norm(const Matrix& M, EntryP p) {
  switch (p) {
    case EntryP::one:
      return kernels::abs_sum(M.data(), M.size());
    case EntryP::two:
      return std::sqrt(kernels::sum_sq(M.data(), M.size()));
    case EntryP::inf:
      return kernels::abs_max(M.data(), M.size());
  }
  return 0.0;
}

namespace {

double max_column_norm(const Matrix& M, bool euclidean) {
  std::vector<double> acc(M.cols(), 0.0);
  for (std::size_t i = 0; i < M.rows(); ++i) {
    const auto r = M.row(i);
    for (std::size_t j = 0; j < M.cols(); ++j) acc[j] += euclidean ? r[j] * r[j] : std::fabs(r[j]);
  }
  double best = 0.0;
  for (double a : acc) best = std::max(best, a);
  return euclidean ? std::sqrt(best) : best;
}

double max_row_norm(const Matrix& M, bool euclidean) {
  double best = 0.0;
  for (std::size_t i = 0; i < M.rows(); ++i) {
    const double* r = M.row(i).data();
    best = std::max(best, euclidean ? kernels::sum_sq(r, M.cols()) : kernels::abs_sum(r, M.cols()));
  }
  return euclidean ? std::sqrt(best) : best;
}

}  // namespace

double induced_norm(const Matrix& M, InducedMode mode) {
  switch (mode) {
    case InducedMode::one_to_one:
      return max_column_norm(M, false);
    case InducedMode::one_to_two:
      return max_column_norm(M, true);
    case InducedMode::two_to_inf:
      return max_row_norm(M, true);
    case InducedMode::inf_to_inf:
      return max_row_norm(M, false);
    case InducedMode::two_to_two: {
      const auto s = singular_values(M);
      return s.empty() ? 0.0 : s.front();
    }
  }
  return 0.0;
}

double trace_norm(const Matrix& M) {
  const auto s = singular_values(M);
  return std::accumulate(s.begin(), s.end(), 0.0);
}

double sharp_norm(const Matrix& M, double rho) {
  if (!(rho > 0.0) || !std::isfinite(rho)) throw ParameterError("sharp_norm: rho must be positive and finite");
  return std::max(rho * induced_norm(M, InducedMode::one_to_one), induced_norm(M, InducedMode::inf_to_inf) / rho);
}

FlatNormSolution flat_norm_lp(const Matrix& M, double rho) {
  if (!(rho > 0.0) || !std::isfinite(rho)) throw ParameterError("flat_norm: rho must be positive and finite");
  const std::size_t m = M.rows();
  const std::size_t n = M.cols();
  const std::size_t mn = m * n;
  if (mn > kFlatNormMaxEntries) {
    throw UnsupportedSizeError("flat_norm: exact LP is limited to m*n <= " + std::to_string(kFlatNormMaxEntries) +
                               ", got " + shape_string(M));
  }
  require_finite(M, "flat_norm input");

  // Variables: N+ (cells 0..mn-1) then N- (cells mn..2mn-1), cell = i*n + j.
  // Constraints: n column budgets  rho * sum_i |N_ij| <= 1,
  //              m row budgets     sum_j |N_ij| / rho <= 1.
  Matrix A(n + m, 2 * mn);
  std::vector<double> b(n + m, 1.0);
  std::vector<double> c(2 * mn);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t cell = i * n + j;
      c[cell] = M(i, j);
      c[mn + cell] = -M(i, j);
      A(j, cell) = rho;
      A(j, mn + cell) = rho;
      A(n + i, cell) = 1.0 / rho;
      A(n + i, mn + cell) = 1.0 / rho;
    }
  }
  const LpResult lp = solve_lp_max(A, b, c);
  if (lp.status != LpStatus::optimal) {
    // The origin is always feasible and the feasible set is bounded.
    throw InternalError("flat_norm: LP terminated without an optimum");
  }
  FlatNormSolution out;
  out.value = lp.value;
  out.maximizer = Matrix(m, n);
  for (std::size_t cell = 0; cell < mn; ++cell) out.maximizer.values()[cell] = lp.x[cell] - lp.x[mn + cell];
  out.dual_bound = std::accumulate(lp.dual.begin(), lp.dual.end(), 0.0);
  return out;
}

double flat_norm(const Matrix& M, double rho) { return flat_norm_lp(M, rho).value; }

}  // namespace slr
