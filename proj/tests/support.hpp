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

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

#include "slr/matrix.hpp"
#include "slr/rng.hpp"
#include "slr/subspaces.hpp"
#include "slr/synth.hpp"

namespace slr::test {

inline Matrix random_matrix(std::size_t m, std::size_t n, Rng& rng, double scale = 1.0) {
  Matrix M(m, n);
  for (double& x : M.values()) x = scale * rng.normal();
  return M;
}

// Each entry kept with probability p.
inline Matrix random_sparse(std::size_t m, std::size_t n, double p, Rng& rng) {
  Matrix M(m, n);
  for (double& x : M.values()) {
    if (rng.uniform() < p) x = rng.normal();
  }
  return M;
}

inline Matrix random_low_rank(std::size_t m, std::size_t n, std::size_t r, Rng& rng) {
  Matrix A = random_matrix(m, r, rng);
  Matrix B = random_matrix(n, r, rng);
  Matrix M(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < r; ++k) s += A(i, k) * B(j, k);
      M(i, j) = s;
    }
  }
  return M;
}

// Random orthogonal n x n matrix from Eigen's Householder QR.
inline Matrix random_orthogonal(std::size_t n, Rng& rng) {
  Eigen::MatrixXd G(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) G(i, j) = rng.normal();
  }
  Eigen::MatrixXd Q = Eigen::HouseholderQR<Eigen::MatrixXd>(G).householderQ();
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out(i, j) = Q(i, j);
  }
  return out;
}

inline Eigen::MatrixXd to_eigen(const Matrix& M) {
  Eigen::MatrixXd E(M.rows(), M.cols());
  for (std::size_t i = 0; i < M.rows(); ++i) {
    for (std::size_t j = 0; j < M.cols(); ++j) E(i, j) = M(i, j);
  }
  return E;
}

inline Matrix from_eigen(const Eigen::MatrixXd& E) {
  Matrix M(E.rows(), E.cols());
  for (Eigen::Index i = 0; i < E.rows(); ++i) {
    for (Eigen::Index j = 0; j < E.cols(); ++j) M(i, j) = E(i, j);
  }
  return M;
}

inline std::vector<double> oracle_singular_values(const Matrix& M) {
  if (M.rows() == 0 || M.cols() == 0) return {};
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(M));
  const Eigen::VectorXd s = svd.singularValues();
  return std::vector<double>(s.data(), s.data() + s.size());
}

inline double oracle_spectral_norm(const Matrix& M) {
  const auto s = oracle_singular_values(M);
  return s.empty() ? 0.0 : s.front();
}

inline double oracle_trace_norm(const Matrix& M) {
  double t = 0.0;
  for (double s : oracle_singular_values(M)) t += s;
  return t;
}

inline double max_abs_diff(const Matrix& A, const Matrix& B) {
  double d = 0.0;
  for (std::size_t k = 0; k < A.size(); ++k) d = std::max(d, std::fabs(A.data()[k] - B.data()[k]));
  return d;
}

inline double frob(const Matrix& M) {
  double s = 0.0;
  for (double x : M.values()) s += x * x;
  return std::sqrt(s);
}

// Rank-1 instance with +-1/sqrt(m) singular vectors and a support laid out
// along random permutations, so a = b = 1 for ktilde <= max(m, n). These are
// the instances on which the recovery conditions actually hold at desk scale.
inline GeneratedInstance flat_instance(std::size_t m, std::size_t n, std::size_t ktilde, std::uint64_t seed,
                                       double sigma = 0.0) {
  InstanceSpec spec;
  spec.m = m;
  spec.n = n;
  spec.rank = 1;
  spec.ktilde = ktilde;
  spec.sigma = sigma;
  spec.seed = Seed{seed};
  spec.subspaces = SubspaceLaw::sign_flat;
  spec.support = SupportLaw::permutations;
  return gen_instance(spec);
}

}  // namespace slr::test
