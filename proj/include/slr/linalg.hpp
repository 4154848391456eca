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

#include "slr/matrix.hpp"

namespace slr {

/// Thin singular value decomposition M = U * diag(singular_values) * V^T.
///
/// Only singular values above the truncation threshold are retained, so
/// `rank()` is the numerical rank of the input.
struct SvdFactors {
  Matrix U;  // m x r, orthonormal columns
  std::vector<double> singular_values;  // nonincreasing, positive
  Matrix V;  // n x r, orthonormal columns

  std::size_t rank() const noexcept { return singular_values.size(); }
  /// U * diag(s) * V^T with the stored or replaced singular values.
  Matrix reconstruct() const;
  Matrix reconstruct(const std::vector<double>& s) const;
};

struct SvdOptions {
  /// Singular values with sigma_i <= relative_cutoff * sigma_1 are dropped.
  double relative_cutoff = 1e-10;
  /// Cap on one-sided Jacobi sweeps.
  int max_sweeps = 80;
};

/// One-sided (Hestenes) Jacobi SVD.
///
/// Throws FactorizationError if the sweeps do not converge, NonFiniteError on
/// NaN/Inf input.
SvdFactors svd(const Matrix& M, const SvdOptions& opts = {});

/// All singular values, including those below the cutoff, nonincreasing.
std::vector<double> singular_values(const Matrix& M);

double frobenius_inner(const Matrix& A, const Matrix& B);

Matrix matmul(const Matrix& A, const Matrix& B);
/// A^T * B
Matrix matmul_tn(const Matrix& A, const Matrix& B);
/// A * B^T
Matrix matmul_nt(const Matrix& A, const Matrix& B);

/// Thin QR via modified Gram-Schmidt with one reorthogonalization pass.
/// Returns the orthonormal factor Q (m x k) whose R factor has a positive
/// diagonal. Throws FactorizationError if A is numerically rank deficient.
Matrix orthonormalize(const Matrix& A);

/// max |(A^T A - I)_{ij}|
double orthonormality_defect(const Matrix& A);

}  // namespace slr
