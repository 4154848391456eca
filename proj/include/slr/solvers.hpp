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

#include <optional>
#include <string>
#include <vector>

#include "slr/matrix.hpp"
#include "slr/prox.hpp"

namespace slr {

/// min (1/(2 mu)) ||X_S + X_L - Y||_F^2 + lambda ||X_S||_v1 + ||X_L||_*
/// optionally subject to ||X_S - Y||_vinf <= b.
struct RegularizedConfig {
  double lambda = 0.0;
  double mu = 0.0;
  double b = kUnbounded;
  /// Stop once (f_prev - f) <= tol * max(|f_prev|, tiny) and the sparse
  /// first-order residual is at most kkt_tol.
  double tol = 1e-12;
  double kkt_tol = 1e-6;
  int max_iter = 100000;
};

/// min lambda ||X_S||_v1 + ||X_L||_*
/// subject to ||X_S + X_L - Y||_v1 <= eps_v1, ||X_S + X_L - Y||_* <= eps_star,
/// optionally ||X_L||_vinf <= b.
struct ConstrainedConfig {
  double lambda = 0.0;
  double eps_v1 = 0.0;
  double eps_star = 0.0;
  double b = kUnbounded;
  double admm_penalty = 1.0;
  /// Residual balancing: scale the penalty by 2 when one residual exceeds
  /// the other by a factor of 10.
  bool adaptive_penalty = false;
  double primal_tol = 1e-9;
  double dual_tol = 1e-9;
  int max_iter = 100000;
};

/// Errors of an estimate against a known target.
struct RecoveryErrors {
  double sparse_v1 = 0.0;
  double sparse_v2 = 0.0;
  double sparse_star = 0.0;
  double lowrank_v1 = 0.0;
  double lowrank_v2 = 0.0;
  double lowrank_star = 0.0;
  /// ||Delta||_F / ||Xbar||_F, or ||Delta||_F when Xbar = 0.
  double sparse_relative = 0.0;
  double lowrank_relative = 0.0;
};

RecoveryErrors recovery_errors(const Matrix& sparse_hat, const Matrix& lowrank_hat, const Matrix& sparse_true,
                               const Matrix& lowrank_true);

struct SolveReport {
  Matrix X_S;
  Matrix X_L;
  int iterations = 0;
  bool converged = false;
  double objective = 0.0;

  // Norms of X_S + X_L - Y.
  double residual_v1 = 0.0;
  double residual_star = 0.0;
  double residual_v2 = 0.0;

  // Regularized: first-order optimality residuals at exit.
  double kkt_sparse = 0.0;
  double kkt_lowrank = 0.0;

  // Constrained: ADMM state at exit.
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double final_penalty = 0.0;
  int penalty_updates = 0;
  int box_safeguard_hits = 0;

  std::vector<std::string> warnings;
  std::optional<RecoveryErrors> errors;
};

/// Exact two-block coordinate descent. The objective is nonincreasing per
/// sweep; a run that hits max_iter returns converged = false.
SolveReport solve_regularized(const Matrix& Y, const RegularizedConfig& cfg);

/// ADMM. With eps_v1 = 0 or eps_star = 0 the constraint set is {0} and the
/// splitting is X_S + X_L = Y; otherwise a three-block consensus splitting
/// separates the norms from the two ball constraints on X_S + X_L - Y, each
/// handled by its own exact projection.
SolveReport solve_constrained(const Matrix& Y, const ConstrainedConfig& cfg);

/// lambda ||X_S||_v1 + ||X_L||_*
double constrained_objective(const Matrix& X_S, const Matrix& X_L, double lambda);
/// (1/(2 mu)) ||X_S + X_L - Y||_F^2 + lambda ||X_S||_v1 + ||X_L||_*
double regularized_objective(const Matrix& Y, const Matrix& X_S, const Matrix& X_L, double lambda, double mu);

/// Euclidean projection onto {Z : ||Z||_v1 <= eps_v1, ||Z||_* <= eps_star}
/// by Dykstra's algorithm.
struct DykstraResult {
  Matrix x;
  int iterations = 0;
  bool converged = false;
};
DykstraResult project_norm_balls(const Matrix& Z, double eps_v1, double eps_star, int max_iter, double tol);

}  // namespace slr
