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

#include <cstddef>
#include <vector>

#include "slr/linalg.hpp"
#include "slr/matrix.hpp"

namespace slr {

struct Cell {
  std::size_t row = 0;
  std::size_t col = 0;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

/// A set of distinct cells of an m x n grid; the support of a sparse matrix.
class SupportSet {
 public:
  SupportSet() = default;
  /// Duplicates are collapsed; out-of-range cells throw DimensionError.
  SupportSet(std::size_t m, std::size_t n, std::vector<Cell> cells);

  /// Cells where M is exactly nonzero.
  static SupportSet of_nonzeros(const Matrix& M);
  static SupportSet full(std::size_t m, std::size_t n);

  std::size_t rows() const noexcept { return m_; }
  std::size_t cols() const noexcept { return n_; }
  std::size_t size() const noexcept { return cells_.size(); }
  bool empty() const noexcept { return cells_.empty(); }
  const std::vector<Cell>& cells() const noexcept { return cells_; }
  bool contains(std::size_t i, std::size_t j) const noexcept { return mask_[i * n_ + j] != 0; }

  /// Max number of cells in any column / row.
  std::size_t max_per_column() const;
  std::size_t max_per_row() const;

 private:
  std::size_t m_ = 0;
  std::size_t n_ = 0;
  std::vector<Cell> cells_;  // sorted, unique
  std::vector<unsigned char> mask_;
};

/// Orthonormal bases of a column space (U, m x r) and row space (V, n x r).
class RowColSpace {
 public:
  RowColSpace() = default;
  /// Throws ParameterError unless both bases are orthonormal to 1e-10 and
  /// have the same number of columns.
  RowColSpace(Matrix U, Matrix V);

  /// Singular subspaces of X after rank truncation.
  static RowColSpace of_matrix(const Matrix& X);
  static RowColSpace empty(std::size_t m, std::size_t n);

  const Matrix& U() const noexcept { return U_; }
  const Matrix& V() const noexcept { return V_; }
  std::size_t rank() const noexcept { return U_.cols(); }
  std::size_t rows() const noexcept { return U_.rows(); }
  std::size_t cols() const noexcept { return V_.rows(); }

 private:
  Matrix U_;
  Matrix V_;
};

/// A candidate decomposition with its support and singular subspaces.
struct TargetPair {
  Matrix sparse;
  Matrix lowrank;
  SupportSet support;
  RowColSpace space;

  static TargetPair of(Matrix sparse, Matrix lowrank);
  std::size_t rows() const noexcept { return sparse.rows(); }
  std::size_t cols() const noexcept { return sparse.cols(); }
};

/// Entry-wise sign in {-1, 0, +1}.
Matrix sign_matrix(const Matrix& M);

/// U V^T of the space (the zero matrix for rank zero).
Matrix orth_matrix(const RowColSpace& space);

Matrix project_support(const SupportSet& support, const Matrix& M);
/// U U^T M + M V V^T - U U^T M V V^T
Matrix project_T(const RowColSpace& space, const Matrix& M);

enum class Projector { support, tangent };

/// M - P(M) for the chosen projector. Only the argument matching `which` is used.
Matrix project_complement(Projector which, const SupportSet& support, const RowColSpace& space, const Matrix& M);
Matrix project_support_complement(const SupportSet& support, const Matrix& M);
Matrix project_T_complement(const RowColSpace& space, const Matrix& M);

/// Which composition the Neumann series inverts:
///   omega:   (I - P_Omega o P_T)^{-1}
///   tangent: (I - P_T o P_Omega)^{-1}
enum class NeumannSide { omega, tangent };

struct NeumannOptions {
  double tol = 1e-12;
  /// Hard ceiling independent of the contraction-derived cap.
  int hard_cap = 100000;
};

struct NeumannResult {
  Matrix x;
  int iterations = 0;
  /// Largest observed ratio ||x_{k+1}-x_k||_F / ||x_k - x_{k-1}||_F while the
  /// steps were above round-off.
  double contraction = 0.0;
  /// ||x - C(x) - rhs||_F
  double residual = 0.0;
};

/// Fixed point of x = rhs + C(x) with C = P_a o P_b per `side`, by plain
/// iteration from x_0 = rhs.
///
/// Throws ConvergenceError (reporting the measured contraction) when the
/// iteration count exceeds ceil(log(tol/||rhs||_F)/log(q)) + 50.
NeumannResult neumann_inverse(const SupportSet& support, const RowColSpace& space, NeumannSide side,
                              const Matrix& rhs, const NeumannOptions& opts = {});

}  // namespace slr
