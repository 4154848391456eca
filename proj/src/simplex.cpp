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

#include "slr/simplex.hpp"

#include <cmath>
#include <limits>

#include "slr/error.hpp"
#include "slr/kernels.hpp"

namespace slr {

LpResult solve_lp_max(const Matrix& A, const std::vector<double>& b, const std::vector<double>& c,
                      int max_pivots) {
  const std::size_t p = A.rows();
  const std::size_t nv = A.cols();
  if (b.size() != p || c.size() != nv) throw DimensionError("solve_lp_max: inconsistent LP dimensions");
  for (double bi : b) {
    if (!(bi >= 0.0)) throw ParameterError("solve_lp_max: right-hand side must be nonnegative");
  }

  // Tableau columns: [structural | slack | rhs]; last row holds reduced costs.
  const std::size_t width = nv + p + 1;
  Matrix T(p + 1, width);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < nv; ++j) T(i, j) = A(i, j);
    T(i, nv + i) = 1.0;
    T(i, width - 1) = b[i];
  }
  for (std::size_t j = 0; j < nv; ++j) T(p, j) = c[j];

  std::vector<std::size_t> basis(p);
  for (std::size_t i = 0; i < p; ++i) basis[i] = nv + i;

  constexpr double kEps = 1e-12;
  LpResult res;
  int degenerate_run = 0;
  for (;;) {
    const bool bland = degenerate_run > 50;
    std::size_t enter = width;
    double best = kEps;
    for (std::size_t j = 0; j + 1 < width; ++j) {
      const double rc = T(p, j);
      if (rc > kEps) {
        if (bland) {
          enter = j;
          break;
        }
        if (rc > best) {
          best = rc;
          enter = j;
        }
      }
    }
    if (enter == width) break;

    std::size_t leave = p;
    double ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < p; ++i) {
      const double a = T(i, enter);
      if (a > kEps) {
        const double r = T(i, width - 1) / a;
        if (r < ratio - 1e-15 || (std::fabs(r - ratio) <= 1e-15 && leave < p && basis[i] < basis[leave])) {
          ratio = r;
          leave = i;
        }
      }
    }
    if (leave == p) {
      res.status = LpStatus::unbounded;
      return res;
    }
    if (++res.pivots > max_pivots) {
      res.status = LpStatus::iteration_limit;
      return res;
    }
    degenerate_run = ratio <= 1e-15 ? degenerate_run + 1 : 0;

    double* prow = T.row(leave).data();
    kernels::scale(1.0 / prow[enter], prow, width);
    prow[enter] = 1.0;
    for (std::size_t i = 0; i <= p; ++i) {
      if (i == leave) continue;
      const double f = T(i, enter);
      if (f != 0.0) {
        kernels::axpy(-f, prow, T.row(i).data(), width);
        T(i, enter) = 0.0;
      }
    }
    basis[leave] = enter;
  }

  res.status = LpStatus::optimal;
  res.x.assign(nv, 0.0);
  for (std::size_t i = 0; i < p; ++i) {
    if (basis[i] < nv) res.x[basis[i]] = T(i, width - 1);
  }
  res.dual.assign(p, 0.0);
  for (std::size_t i = 0; i < p; ++i) res.dual[i] = -T(p, nv + i);
  double v = 0.0;
  for (std::size_t j = 0; j < nv; ++j) v += c[j] * res.x[j];
  res.value = v;
  return res;
}

}  // namespace slr
