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

#include "slr/subspaces.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "slr/error.hpp"
#include "slr/kernels.hpp"
#include "slr/norms.hpp"

namespace slr {

SupportSet::SupportSet(std::size_t m, std::size_t n, std::vector<Cell> cells)
    : m_(m), n_(n), cells_(std::move(cells)), mask_(m * n, 0) {
  for (const Cell& c : cells_) {
    if (c.row >= m || c.col >= n) {
      throw DimensionError("support cell (" + std::to_string(c.row) + "," + std::to_string(c.col) +
                           ") outside a " + std::to_string(m) + "x" + std::to_string(n) + " grid");
    }
  }
  std::sort(cells_.begin(), cells_.end());
  cells_.erase(std::unique(cells_.begin(), cells_.end()), cells_.end());
  for (const Cell& c : cells_) mask_[c.row * n_ + c.col] = 1;
}

SupportSet SupportSet::of_nonzeros(const Matrix& M) {
  std::vector<Cell> cells;
  for (std::size_t i = 0; i < M.rows(); ++i) {
    for (std::size_t j = 0; j < M.cols(); ++j) {
      if (M(i, j) != 0.0) cells.push_back({i, j});
    }
  }
  return SupportSet(M.rows(), M.cols(), std::move(cells));
}

SupportSet SupportSet::full(std::size_t m, std::size_t n) {
  std::vector<Cell> cells;
  cells.reserve(m * n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) cells.push_back({i, j});
  }
  return SupportSet(m, n, std::move(cells));
}

std::size_t SupportSet::max_per_column() const {
  std::vector<std::size_t> count(n_, 0);
  for (const Cell& c : cells_) ++count[c.col];
  return count.empty() ? 0 : *std::max_element(count.begin(), count.end());
}

std::size_t SupportSet::max_per_row() const {
  std::vector<std::size_t> count(m_, 0);
  for (const Cell& c : cells_) ++count[c.row];
  return count.empty() ? 0 : *std::max_element(count.begin(), count.end());
}

RowColSpace::RowColSpace(Matrix U, Matrix V) : U_(std::move(U)), V_(std::move(V)) {
  if (U_.cols() != V_.cols()) {
    throw ParameterError("RowColSpace: U has " + std::to_string(U_.cols()) + " columns but V has " +
                         std::to_string(V_.cols()));
  }
  if (rank() > std::min(rows(), cols())) throw ParameterError("RowColSpace: rank exceeds min(m, n)");
  if (rank() > 0 && (orthonormality_defect(U_) > 1e-10 || orthonormality_defect(V_) > 1e-10)) {
    throw ParameterError("RowColSpace: bases are not orthonormal to 1e-10");
  }
}

RowColSpace RowColSpace::of_matrix(const Matrix& X) {
  SvdFactors f = svd(X);
  return RowColSpace(std::move(f.U), std::move(f.V));
}

RowColSpace RowColSpace::empty(std::size_t m, std::size_t n) { return RowColSpace(Matrix(m, 0), Matrix(n, 0)); }

TargetPair TargetPair::of(Matrix sparse, Matrix lowrank) {
  require_same_shape(sparse, lowrank, "TargetPair");
  require_finite(sparse, "sparse component");
  require_finite(lowrank, "low-rank component");
  SupportSet support = SupportSet::of_nonzeros(sparse);
  RowColSpace space = RowColSpace::of_matrix(lowrank);
  return TargetPair{std::move(sparse), std::move(lowrank), std::move(support), std::move(space)};
}

Matrix sign_matrix(const Matrix& M) {
  Matrix S(M.rows(), M.cols());
  auto out = S.values();
  auto in = M.values();
  for (std::size_t k = 0; k < in.size(); ++k) out[k] = in[k] > 0.0 ? 1.0 : (in[k] < 0.0 ? -1.0 : 0.0);
  return S;
}

Matrix orth_matrix(const RowColSpace& space) { return matmul_nt(space.U(), space.V()); }

Matrix project_support(const SupportSet& support, const Matrix& M) {
  if (support.rows() != M.rows() || support.cols() != M.cols()) {
    throw DimensionError("project_support: support grid does not match " + shape_string(M));
  }
  Matrix out(M.rows(), M.cols());
  for (const Cell& c : support.cells()) out(c.row, c.col) = M(c.row, c.col);
  return out;
}

Matrix project_T(const RowColSpace& space, const Matrix& M) {
  if (space.rows() != M.rows() || space.cols() != M.cols()) {
    throw DimensionError("project_T: space dimensions do not match " + shape_string(M));
  }
  if (space.rank() == 0) return Matrix(M.rows(), M.cols());
  // U U^T M + (M - U U^T M) V V^T, which expands to the three-term formula.
  Matrix col_part = matmul(space.U(), matmul_tn(space.U(), M));
  Matrix rest = M - col_part;
  Matrix row_part = matmul_nt(matmul(rest, space.V()), space.V());
  return col_part + row_part;
}

Matrix project_support_complement(const SupportSet& support, const Matrix& M) {
  return M - project_support(support, M);
}

Matrix project_T_complement(const RowColSpace& space, const Matrix& M) { return M - project_T(space, M); }

Matrix project_complement(Projector which, const SupportSet& support, const RowColSpace& space, const Matrix& M) {
  return which == Projector::support ? project_support_complement(support, M) : project_T_complement(space, M);
}

NeumannResult neumann_inverse(const SupportSet& support, const RowColSpace& space, NeumannSide side,
                              const Matrix& rhs, const NeumannOptions& opts) {
  if (!(opts.tol > 0.0)) throw ParameterError("neumann_inverse: tol must be positive");
  auto compose = [&](const Matrix& X) {
    return side == NeumannSide::omega ? project_support(support, project_T(space, X))
                                      : project_T(space, project_support(support, X));
  };

  NeumannResult res;
  res.x = rhs;
  const double rhs_norm = norm_v2(rhs);
  if (rhs_norm == 0.0) {
    res.iterations = 0;
    return res;
  }

  // Track the step delta_k = C^k(rhs) directly; by linearity it equals
  // x_k - x_{k-1}, and forming it this way keeps the measured ratio free of
  // cancellation error as the steps shrink.
  Matrix delta = rhs;
  double delta_norm = rhs_norm;
  double q = 0.0;
  for (;;) {
    Matrix next = compose(delta);
    const double next_norm = norm_v2(next);
    ++res.iterations;
    // The first step leaves the range of P_a only through rhs itself, so
    // ratios are measured from the second step on.
    if (res.iterations >= 2 && delta_norm > 0.0) q = std::max(q, next_norm / delta_norm);
    res.x += next;
    if (next_norm <= opts.tol) break;

    int cap = opts.hard_cap;
    if (q > 0.0 && q < 1.0) {
      const double need = std::ceil(std::log(opts.tol / rhs_norm) / std::log(q));
      cap = std::min<double>(cap, std::max(0.0, need) + 50.0);
    } else if (q >= 1.0) {
      cap = std::min(cap, 50);
    }
    if (res.iterations >= cap) {
      std::ostringstream msg;
      msg << "neumann_inverse: no convergence after " << res.iterations << " iterations (measured contraction q = "
          << q << ", step = " << next_norm << ")";
      throw ConvergenceError(msg.str());
    }
    delta = std::move(next);
    delta_norm = next_norm;
  }
  res.contraction = q;
  res.residual = norm_v2(res.x - compose(res.x) - rhs);
  return res;
}

}  // namespace slr
