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

#include "slr/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "slr/error.hpp"
#include "slr/linalg.hpp"
#include "slr/norms.hpp"

namespace slr {

namespace {

struct Thresholded {
  Matrix X;
  double trace_norm = 0.0;
};

Thresholded svt_with_norm(const Matrix& M, double tau) {
  const SvdFactors f = svd(M);
  std::vector<double> s(f.rank());
  double total = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    s[i] = std::max(f.singular_values[i] - tau, 0.0);
    total += s[i];
  }
  return {f.reconstruct(s), total};
}

double sq(double x) { return x * x; }

void fill_residuals(SolveReport& rep, const Matrix& Y) {
  const Matrix R = rep.X_S + rep.X_L - Y;
  rep.residual_v1 = norm_v1(R);
  rep.residual_star = trace_norm(R);
  rep.residual_v2 = norm_v2(R);
}

void require_positive(double x, const char* what) {
  if (!(x > 0.0)) throw ParameterError(std::string(what) + " must be positive");
}

// Distance of r to lambda d|x| + N_[lo, hi](x), entry-wise, maximized.
double sparse_kkt_residual(const Matrix& Y, const Matrix& S, const Matrix& R, double lambda, double b) {
  double worst = 0.0;
  auto y = Y.values();
  auto s = S.values();
  auto r = R.values();
  const double inf = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < s.size(); ++k) {
    double lo = s[k] > 0.0 ? lambda : -lambda;
    double hi = s[k] < 0.0 ? -lambda : lambda;
    if (std::isfinite(b)) {
      if (s[k] >= y[k] + b) hi = inf;
      if (s[k] <= y[k] - b) lo = -inf;
    }
    worst = std::max(worst, std::max({lo - r[k], r[k] - hi, 0.0}));
  }
  return worst;
}

// Membership defect of R in the trace-norm subdifferential at L.
double lowrank_kkt_residual(const Matrix& L, const Matrix& R) {
  const SvdFactors f = svd(L);
  if (f.rank() == 0) return std::max(0.0, spectral_norm(R) - 1.0);
  const Matrix PR = [&] {
    Matrix col = matmul(f.U, matmul_tn(f.U, R));
    Matrix rest = R - col;
    return col + matmul_nt(matmul(rest, f.V), f.V);
  }();
  const double eq = norm_vinf(PR - matmul_nt(f.U, f.V));
  const double cap = std::max(0.0, spectral_norm(R - PR) - 1.0);
  return std::max(eq, cap);
}

// L-step of the constrained ADMM: argmin ||L||_* + (beta/2)||L - V||_F^2,
// followed by the box clip when b is finite. A clipped candidate that does
// not improve this subproblem over the previous (feasible) iterate is
// rejected and the previous iterate kept.
Matrix lowrank_step(const Matrix& V, double beta, double b, const Matrix& previous, SolveReport& rep) {
  Thresholded t = svt_with_norm(V, 1.0 / beta);
  if (!std::isfinite(b) || norm_vinf(t.X) <= b) return std::move(t.X);
  Matrix clipped = clip_entries(t.X, b);
  auto phi = [&](const Matrix& L) { return trace_norm(L) + 0.5 * beta * sq(norm_v2(L - V)); };
  if (phi(clipped) <= phi(previous)) return clipped;
  ++rep.box_safeguard_hits;
  return previous;
}

}  // namespace

RecoveryErrors recovery_errors(const Matrix& sparse_hat, const Matrix& lowrank_hat, const Matrix& sparse_true,
                               const Matrix& lowrank_true) {
  require_same_shape(sparse_hat, sparse_true, "recovery_errors");
  require_same_shape(lowrank_hat, lowrank_true, "recovery_errors");
  const Matrix dS = sparse_hat - sparse_true;
  const Matrix dL = lowrank_hat - lowrank_true;
  RecoveryErrors e;
  e.sparse_v1 = norm_v1(dS);
  e.sparse_v2 = norm_v2(dS);
  e.sparse_star = trace_norm(dS);
  e.lowrank_v1 = norm_v1(dL);
  e.lowrank_v2 = norm_v2(dL);
  e.lowrank_star = trace_norm(dL);
  const double ns = norm_v2(sparse_true);
  const double nl = norm_v2(lowrank_true);
  e.sparse_relative = ns > 0.0 ? e.sparse_v2 / ns : e.sparse_v2;
  e.lowrank_relative = nl > 0.0 ? e.lowrank_v2 / nl : e.lowrank_v2;
  return e;
}

double constrained_objective(const Matrix& X_S, const Matrix& X_L, double lambda) {
  return lambda * norm_v1(X_S) + trace_norm(X_L);
}

double regularized_objective(const Matrix& Y, const Matrix& X_S, const Matrix& X_L, double lambda, double mu) {
  return sq(norm_v2(X_S + X_L - Y)) / (2.0 * mu) + constrained_objective(X_S, X_L, lambda);
}

SolveReport solve_regularized(const Matrix& Y, const RegularizedConfig& cfg) {
  require_finite(Y, "input Y");
  require_positive(cfg.lambda, "lambda");
  require_positive(cfg.mu, "mu");
  require_positive(cfg.b, "b");
  require_positive(cfg.tol, "tol");
  require_positive(cfg.kkt_tol, "kkt_tol");
  if (cfg.max_iter < 1) throw ParameterError("max_iter must be at least 1");

  const std::size_t m = Y.rows();
  const std::size_t n = Y.cols();
  SolveReport rep;
  rep.X_S = Matrix(m, n);
  rep.X_L = Matrix(m, n);
  double f_prev = sq(norm_v2(Y)) / (2.0 * cfg.mu);
  double f = f_prev;
  for (int it = 1; it <= cfg.max_iter; ++it) {
    rep.X_S = prox_l1_box(Y - rep.X_L, Y, cfg.lambda * cfg.mu, cfg.b);
    Thresholded t = svt_with_norm(Y - rep.X_S, cfg.mu);
    rep.X_L = std::move(t.X);
    f = sq(norm_v2(rep.X_S + rep.X_L - Y)) / (2.0 * cfg.mu) + cfg.lambda * norm_v1(rep.X_S) + t.trace_norm;
    rep.iterations = it;
    if (f_prev - f <= cfg.tol * std::max(std::fabs(f_prev), std::numeric_limits<double>::min())) {
      const Matrix R = (Y - rep.X_S - rep.X_L) * (1.0 / cfg.mu);
      if (sparse_kkt_residual(Y, rep.X_S, R, cfg.lambda, cfg.b) <= cfg.kkt_tol) {
        rep.converged = true;
        break;
      }
    }
    f_prev = f;
  }
  if (!rep.converged) rep.warnings.push_back("regularized solver reached max_iter without meeting tol");

  rep.objective = regularized_objective(Y, rep.X_S, rep.X_L, cfg.lambda, cfg.mu);
  fill_residuals(rep, Y);
  const Matrix R = (Y - rep.X_S - rep.X_L) * (1.0 / cfg.mu);
  rep.kkt_sparse = sparse_kkt_residual(Y, rep.X_S, R, cfg.lambda, cfg.b);
  rep.kkt_lowrank = lowrank_kkt_residual(rep.X_L, R);
  return rep;
}

DykstraResult project_norm_balls(const Matrix& Z, double eps_v1, double eps_star, int max_iter, double tol) {
  if (!(eps_v1 >= 0.0) || !(eps_star >= 0.0)) throw ParameterError("project_norm_balls: radii must be >= 0");
  DykstraResult res;
  if (eps_v1 == 0.0 || eps_star == 0.0) {
    res.x = Matrix(Z.rows(), Z.cols());
    res.converged = true;
    return res;
  }
  // A projection onto one ball that lands inside the other is already the
  // projection onto the intersection.
  Matrix first = project_l1_ball(Z, eps_v1);
  if (trace_norm(first) <= eps_star) {
    res.x = std::move(first);
    res.converged = true;
    return res;
  }
  Matrix second = project_nuclear_ball(Z, eps_star);
  if (norm_v1(second) <= eps_v1) {
    res.x = std::move(second);
    res.converged = true;
    return res;
  }
  Matrix x = Z;
  Matrix p(Z.rows(), Z.cols());
  Matrix q(Z.rows(), Z.cols());
  for (int k = 1; k <= max_iter; ++k) {
    Matrix y = project_l1_ball(x + p, eps_v1);
    p = x + p - y;
    Matrix next = project_nuclear_ball(y + q, eps_star);
    q = y + q - next;
    const double change = norm_v2(next - x);
    const double gap = norm_v2(next - y);
    x = std::move(next);
    res.iterations = k;
    if (change <= tol && gap <= tol) {
      res.converged = true;
      break;
    }
  }
  res.x = std::move(x);
  return res;
}

SolveReport solve_constrained(const Matrix& Y, const ConstrainedConfig& cfg) {
  require_finite(Y, "input Y");
  require_positive(cfg.lambda, "lambda");
  require_positive(cfg.b, "b");
  require_positive(cfg.admm_penalty, "admm_penalty");
  if (!(cfg.eps_v1 >= 0.0) || !(cfg.eps_star >= 0.0)) throw ParameterError("eps_v1 and eps_star must be >= 0");
  if (!(cfg.primal_tol >= 0.0) || !(cfg.dual_tol >= 0.0)) throw ParameterError("ADMM tolerances must be >= 0");
  if (cfg.max_iter < 1) throw ParameterError("max_iter must be at least 1");

  const std::size_t m = Y.rows();
  const std::size_t n = Y.cols();
  const bool exact = cfg.eps_v1 == 0.0 || cfg.eps_star == 0.0;
  double beta = cfg.admm_penalty;

  SolveReport rep;
  Matrix S(m, n);
  Matrix L(m, n);
  if (exact) {
    Matrix W(m, n);  // scaled dual of S + L = Y
    for (int it = 1; it <= cfg.max_iter; ++it) {
      L = lowrank_step(Y - S - W, beta, cfg.b, L, rep);
      Matrix S_next = soft_threshold(Y - L - W, cfg.lambda / beta);
      const Matrix R = S_next + L - Y;
      W += R;
      rep.primal_residual = norm_v2(R);
      rep.dual_residual = beta * norm_v2(S_next - S);
      S = std::move(S_next);
      rep.iterations = it;
      if (rep.primal_residual <= cfg.primal_tol && rep.dual_residual <= cfg.dual_tol) {
        rep.converged = true;
        break;
      }
      if (cfg.adaptive_penalty) {
        if (rep.primal_residual > 10.0 * rep.dual_residual) {
          beta *= 2.0;
          W *= 0.5;
          ++rep.penalty_updates;
        } else if (rep.dual_residual > 10.0 * rep.primal_residual) {
          beta *= 0.5;
          W *= 2.0;
          ++rep.penalty_updates;
        }
      }
    }
  } else {
    // Consensus over three blocks sharing (S, L): the norms, the v1 ball on
    // S + L - Y and the trace-norm ball on S + L - Y. Each block has an exact
    // prox, so no inner projection loop is needed.
    Matrix Sz(m, n);
    Matrix Lz(m, n);
    Matrix W[3][2] = {{Matrix(m, n), Matrix(m, n)}, {Matrix(m, n), Matrix(m, n)}, {Matrix(m, n), Matrix(m, n)}};
    Matrix X[3][2] = {{Matrix(m, n), Matrix(m, n)}, {Matrix(m, n), Matrix(m, n)}, {Matrix(m, n), Matrix(m, n)}};
    auto project_shift = [&](const Matrix& a, const Matrix& c, bool v1_ball, Matrix& out_s, Matrix& out_l) {
      const Matrix d = a + c - Y;
      const Matrix p = v1_ball ? project_l1_ball(d, cfg.eps_v1) : project_nuclear_ball(d, cfg.eps_star);
      const Matrix half_excess = (d - p) * 0.5;
      out_s = a - half_excess;
      out_l = c - half_excess;
    };
    for (int it = 1; it <= cfg.max_iter; ++it) {
      X[0][0] = soft_threshold(Sz - W[0][0], cfg.lambda / beta);
      X[0][1] = lowrank_step(Lz - W[0][1], beta, cfg.b, X[0][1], rep);
      project_shift(Sz - W[1][0], Lz - W[1][1], true, X[1][0], X[1][1]);
      project_shift(Sz - W[2][0], Lz - W[2][1], false, X[2][0], X[2][1]);
      Matrix Sn = (X[0][0] + W[0][0] + X[1][0] + W[1][0] + X[2][0] + W[2][0]) * (1.0 / 3.0);
      Matrix Ln = (X[0][1] + W[0][1] + X[1][1] + W[1][1] + X[2][1] + W[2][1]) * (1.0 / 3.0);
      double primal = 0.0;
      for (auto& blk : X) {
        primal += sq(norm_v2(blk[0] - Sn)) + sq(norm_v2(blk[1] - Ln));
      }
      for (int i = 0; i < 3; ++i) {
        W[i][0] += X[i][0] - Sn;
        W[i][1] += X[i][1] - Ln;
      }
      rep.primal_residual = std::sqrt(primal);
      rep.dual_residual = beta * std::sqrt(3.0 * (sq(norm_v2(Sn - Sz)) + sq(norm_v2(Ln - Lz))));
      Sz = std::move(Sn);
      Lz = std::move(Ln);
      rep.iterations = it;
      if (rep.primal_residual <= cfg.primal_tol && rep.dual_residual <= cfg.dual_tol) {
        rep.converged = true;
        break;
      }
      if (cfg.adaptive_penalty) {
        double scale = 1.0;
        if (rep.primal_residual > 10.0 * rep.dual_residual) {
          scale = 2.0;
        } else if (rep.dual_residual > 10.0 * rep.primal_residual) {
          scale = 0.5;
        }
        if (scale != 1.0) {
          beta *= scale;
          for (auto& blk : W) {
            blk[0] *= 1.0 / scale;
            blk[1] *= 1.0 / scale;
          }
          ++rep.penalty_updates;
        }
      }
    }
    S = std::move(X[0][0]);
    L = std::move(X[0][1]);
  }
  if (rep.box_safeguard_hits > 0) {
    rep.warnings.push_back("box clip rejected by the objective safeguard in " +
                           std::to_string(rep.box_safeguard_hits) + " iterations");
  }
  if (!rep.converged) rep.warnings.push_back("ADMM reached max_iter without meeting the residual tolerances");

  rep.final_penalty = beta;
  rep.X_S = std::move(S);
  rep.X_L = std::move(L);
  rep.objective = constrained_objective(rep.X_S, rep.X_L, cfg.lambda);
  fill_residuals(rep, Y);
  return rep;
}

}  // namespace slr
