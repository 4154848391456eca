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

#include <cmath>

#include "slr/kernels.hpp"

namespace slr::kernels {
namespace {

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

double sum_sq_scalar(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * x[i];
  return s;
}

double abs_sum_scalar(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::fabs(x[i]);
  return s;
}

double abs_max_scalar(const double* x, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = std::fabs(x[i]);
    if (a > m) m = a;
  }
  return m;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = y[i] + a * x[i];
}

void scale_scalar(double a, double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

void rotate_scalar(double c, double s, double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = x[i];
    const double yi = y[i];
    x[i] = c * xi - s * yi;
    y[i] = s * xi + c * yi;
  }
}

void soft_threshold_scalar(const double* x, double t, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double v = x[i];
    out[i] = std::fabs(v) > t ? v - std::copysign(t, v) : 0.0;
  }
}

void clip_scalar(const double* x, double b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double lo = x[i] > -b ? x[i] : -b;
    out[i] = lo < b ? lo : b;
  }
}

constexpr Table kScalar{
    dot_scalar,  sum_sq_scalar,  abs_sum_scalar,         abs_max_scalar, axpy_scalar,
    scale_scalar, rotate_scalar, soft_threshold_scalar, clip_scalar,
};

}  // namespace

const Table& scalar_table() noexcept { return kScalar; }

}  // namespace slr::kernels
