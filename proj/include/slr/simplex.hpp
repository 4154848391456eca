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

#include <vector>

#include "slr/matrix.hpp"

namespace slr {

enum class LpStatus { optimal, unbounded, iteration_limit };

struct LpResult {
  LpStatus status = LpStatus::optimal;
  double value = 0.0;
  std::vector<double> x;     // primal solution
  std::vector<double> dual;  // one multiplier per inequality, all >= 0 at optimum
  int pivots = 0;
};

/// Dense primal simplex for   maximize c^T x  s.t.  A x <= b, x >= 0,
/// with b >= 0 so the slack basis is feasible.
///
/// Dantzig pricing, falling back to Bland's rule after a run of degenerate
/// pivots so that cycling cannot occur.
LpResult solve_lp_max(const Matrix& A, const std::vector<double>& b, const std::vector<double>& c,
                      int max_pivots = 200000);

}  // namespace slr
