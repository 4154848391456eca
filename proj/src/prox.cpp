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

#include "slr/prox.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "slr/error.hpp"
#include "slr/kernels.hpp"
#include "slr/linalg.hpp"
#include "slr/norms.hpp"

namespace slr {

namespace {

void require_nonnegative(double t, const char* what) {
  if (!(t >= 0.0) || std::isnan(t)) throw ParameterError(std::string(what) + " must be nonnegative");
}

// Threshold theta such that sum max(|x_i| - theta, 0) = eps, for sorted
// magnitudes whose total exceeds eps.
double l1_threshold(std::vector<double> mags, double eps) {
  std::sort(mags.begin(), mags.end(), std::greater<>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (std::size_t k = 0; k < mags.size(); ++k) {
    cumulative += mags[k];
    const double candidate = (cumulative - eps) / static_cast<double>(k + 1);
    if (k + 1 == mags.size() || mags[k + 1] <= candidate) {
      theta = candidate;
      break;
    }
  }
  return std::max(theta, 0.0);
}

}  // namespace

Matrix soft_threshold(const Matrix& M, double t) {
  require_nonnegative(t, "soft_threshold: t");
  Matrix out(M.rows(), M.cols());
  kernels::soft_threshold(M.data(), t, out.data(), M.size());
  return out;
}

Matrix svt(const Matrix& M, double tau) {
  require_nonnegative(tau, "svt: tau");
  const SvdFactors f = svd(M);
  std::vector<double> s(f.rank());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = std::max(f.singular_values[i] - tau, 0.0);
  return f.reconstruct(s);
}

Matrix prox_l1_box(const Matrix& V, const Matrix& center, double t, double b) {
  require_same_shape(V, center, "prox_l1_box");
  require_nonnegative(t, "prox_l1_box: t");
  if (!(b > 0.0)) throw ParameterError("prox_l1_box: b must be positive");
  Matrix out = soft_threshold(V, t);
  if (std::isinf(b)) return out;
  auto x = out.values();
  auto c = center.values();
  for (std::size_t k = 0; k < x.size(); ++k) x[k] = std::clamp(x[k], c[k] - b, c[k] + b);
  return out;
}

Matrix clip_entries(const Matrix& M, double b) {
  if (!(b > 0.0)) throw ParameterError("clip_entries: b must be positive");
  Matrix out(M.rows(), M.cols());
  kernels::clip(M.data(), b, out.data(), M.size());
  return out;
}

Matrix project_l1_ball(const Matrix& M, double eps) {
  require_nonnegative(eps, "project_l1_ball: eps");
  if (eps == 0.0) return Matrix(M.rows(), M.cols());
  if (norm_v1(M) <= eps) return M;
  std::vector<double> mags(M.size());
  auto in = M.values();
  for (std::size_t k = 0; k < mags.size(); ++k) mags[k] = std::fabs(in[k]);
  return soft_threshold(M, l1_threshold(std::move(mags), eps));
}

Matrix project_nuclear_ball(const Matrix& M, double eps) {
  require_nonnegative(eps, "project_nuclear_ball: eps");
  if (eps == 0.0) return Matrix(M.rows(), M.cols());
  const SvdFactors f = svd(M);
  double total = 0.0;
  for (double s : f.singular_values) total += s;
  if (total <= eps) return M;
  const double theta = l1_threshold(f.singular_values, eps);
  std::vector<double> s(f.rank());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = std::max(f.singular_values[i] - theta, 0.0);
  return f.reconstruct(s);
}

}  // namespace slr
