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

#include "slr/linalg.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numeric>
#include <string>

#include "slr/error.hpp"
#include "slr/kernels.hpp"

namespace slr {
namespace {

struct JacobiResult {
  Matrix W;   // n x m; row j is the j-th rotated column of the input
  Matrix Vt;  // n x n; row j is the j-th column of V
  std::vector<double> norms;
};

// Orthogonalizes the columns of M (m >= n) by plane rotations applied from
// the right. Works on M^T so that every column is a contiguous row.
JacobiResult one_sided_jacobi(const Matrix& M, int max_sweeps) {
  const std::size_t m = M.rows();
  const std::size_t n = M.cols();
  JacobiResult r{M.transposed(), Matrix::identity(n), std::vector<double>(n)};
  std::vector<double> norm2(n);
  for (std::size_t j = 0; j < n; ++j) norm2[j] = kernels::sum_sq(r.W.row(j).data(), m);

  const double tol = static_cast<double>(std::max<std::size_t>(m, 1)) * DBL_EPSILON;
  // Columns at roundoff level relative to the whole matrix are treated as zero;
  // rotating them against each other only reshuffles noise and never settles.
  const double total = std::accumulate(norm2.begin(), norm2.end(), 0.0);
  const double negligible = tol * tol * total;
  bool converged = n < 2;
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    bool rotated = false;
    for (std::size_t j = 0; j + 1 < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        const double a = norm2[j];
        const double b = norm2[k];
        if (a <= negligible || b <= negligible) continue;
        double* wj = r.W.row(j).data();
        double* wk = r.W.row(k).data();
        const double g = kernels::dot(wj, wk, m);
        if (std::fabs(g) <= tol * std::sqrt(a) * std::sqrt(b)) continue;
        rotated = true;
        const double zeta = (b - a) / (2.0 * g);
        const double t = std::copysign(1.0, zeta) / (std::fabs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        kernels::rotate(c, s, wj, wk, m);
        kernels::rotate(c, s, r.Vt.row(j).data(), r.Vt.row(k).data(), n);
        norm2[j] = kernels::sum_sq(wj, m);
        norm2[k] = kernels::sum_sq(wk, m);
      }
    }
    converged = !rotated;
  }
  if (!converged) {
    throw FactorizationError("Jacobi SVD did not converge within " + std::to_string(max_sweeps) +
                             " sweeps for a " + shape_string(M) + " matrix");
  }
  for (std::size_t j = 0; j < n; ++j) r.norms[j] = std::sqrt(norm2[j]);
  return r;
}

SvdFactors svd_tall(const Matrix& M, const SvdOptions& opts) {
  const std::size_t m = M.rows();
  const std::size_t n = M.cols();
  JacobiResult jr = one_sided_jacobi(M, opts.max_sweeps);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return jr.norms[x] > jr.norms[y]; });

  const double top = n > 0 ? jr.norms[order[0]] : 0.0;
  std::size_t r = 0;
  while (r < n && jr.norms[order[r]] > 0.0 && jr.norms[order[r]] > opts.relative_cutoff * top) ++r;

  SvdFactors f{Matrix(m, r), std::vector<double>(r), Matrix(n, r)};
  for (std::size_t c = 0; c < r; ++c) {
    const std::size_t j = order[c];
    const double sigma = jr.norms[j];
    f.singular_values[c] = sigma;
    const auto w = jr.W.row(j);
    const auto v = jr.Vt.row(j);
    for (std::size_t i = 0; i < m; ++i) f.U(i, c) = w[i] / sigma;
    for (std::size_t i = 0; i < n; ++i) f.V(i, c) = v[i];
  }
  return f;
}

}  // namespace

Matrix SvdFactors::reconstruct() const { return reconstruct(singular_values); }

Matrix SvdFactors::reconstruct(const std::vector<double>& s) const {
  const std::size_t m = U.rows();
  const std::size_t n = V.rows();
  const std::size_t r = std::min(s.size(), rank());
  // (U diag(s)) V^T, built as a sum of scaled outer products row by row.
  Matrix out(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    double* orow = out.row(i).data();
    for (std::size_t k = 0; k < r; ++k) {
      const double a = U(i, k) * s[k];
      if (a == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) orow[j] += a * V(j, k);
    }
  }
  return out;
}

SvdFactors svd(const Matrix& M, const SvdOptions& opts) {
  require_finite(M, "svd input");
  if (M.rows() == 0 || M.cols() == 0) {
    return SvdFactors{Matrix(M.rows(), 0), {}, Matrix(M.cols(), 0)};
  }
  if (M.rows() < M.cols()) {
    SvdFactors t = svd_tall(M.transposed(), opts);
    std::swap(t.U, t.V);
    return t;
  }
  return svd_tall(M, opts);
}

std::vector<double> singular_values(const Matrix& M) {
  require_finite(M, "singular_values input");
  if (M.rows() == 0 || M.cols() == 0) return {};
  const Matrix tall = M.rows() >= M.cols() ? M : M.transposed();
  JacobiResult jr = one_sided_jacobi(tall, SvdOptions{}.max_sweeps);
  std::sort(jr.norms.begin(), jr.norms.end(), std::greater<>());
  return jr.norms;
}

double frobenius_inner(const Matrix& A, const Matrix& B) {
  require_same_shape(A, B, "frobenius_inner");
  return kernels::dot(A.data(), B.data(), A.size());
}

Matrix matmul(const Matrix& A, const Matrix& B) {
  if (A.cols() != B.rows()) {
    throw DimensionError("matmul: " + shape_string(A) + " * " + shape_string(B));
  }
  Matrix C(A.rows(), B.cols());
  for (std::size_t i = 0; i < A.rows(); ++i) {
    double* crow = C.row(i).data();
    for (std::size_t k = 0; k < A.cols(); ++k) {
      const double a = A(i, k);
      if (a != 0.0) kernels::axpy(a, B.row(k).data(), crow, B.cols());
    }
  }
  return C;
}

Matrix matmul_tn(const Matrix& A, const Matrix& B) {
  if (A.rows() != B.rows()) {
    throw DimensionError("matmul_tn: " + shape_string(A) + "^T * " + shape_string(B));
  }
  Matrix C(A.cols(), B.cols());
  for (std::size_t i = 0; i < A.rows(); ++i) {
    const double* brow = B.row(i).data();
    for (std::size_t j = 0; j < A.cols(); ++j) {
      const double a = A(i, j);
      if (a != 0.0) kernels::axpy(a, brow, C.row(j).data(), B.cols());
    }
  }
  return C;
}

Matrix matmul_nt(const Matrix& A, const Matrix& B) {
  if (A.cols() != B.cols()) {
    throw DimensionError("matmul_nt: " + shape_string(A) + " * " + shape_string(B) + "^T");
  }
  Matrix C(A.rows(), B.rows());
  for (std::size_t i = 0; i < A.rows(); ++i) {
    for (std::size_t j = 0; j < B.rows(); ++j) C(i, j) = kernels::dot(A.row(i).data(), B.row(j).data(), A.cols());
  }
  return C;
}

Matrix orthonormalize(const Matrix& A) {
  const std::size_t m = A.rows();
  const std::size_t k = A.cols();
  Matrix W = A.transposed();
  for (std::size_t j = 0; j < k; ++j) {
    double* wj = W.row(j).data();
    const double original = std::sqrt(kernels::sum_sq(wj, m));
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t i = 0; i < j; ++i) {
        const double* wi = W.row(i).data();
        kernels::axpy(-kernels::dot(wi, wj, m), wi, wj, m);
      }
    }
    const double nrm = std::sqrt(kernels::sum_sq(wj, m));
    if (!(nrm > 1e-12 * original) || nrm == 0.0) {
      throw FactorizationError("orthonormalize: column " + std::to_string(j) + " of a " + shape_string(A) +
                               " matrix is numerically dependent");
    }
    kernels::scale(1.0 / nrm, wj, m);
  }
  return W.transposed();
}

double orthonormality_defect(const Matrix& A) {
  const Matrix G = matmul_tn(A, A);
  double worst = 0.0;
  for (std::size_t i = 0; i < G.rows(); ++i) {
    for (std::size_t j = 0; j < G.cols(); ++j) {
      worst = std::max(worst, std::fabs(G(i, j) - (i == j ? 1.0 : 0.0)));
    }
  }
  return worst;
}

}  // namespace slr
