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

// AVX2 variants. This translation unit is compiled with -mavx2 -mfma and is
// only ever entered after the dispatcher has confirmed CPU support.

#include <immintrin.h>

#include <cmath>

#include "slr/kernels.hpp"

namespace slr::kernels {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline __m256d abs_pd(__m256d v) {
  return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

double sum_sq_avx2(const double* x, std::size_t n) { return dot_avx2(x, x, n); }

double abs_sum_avx2(const double* x, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_add_pd(acc0, abs_pd(_mm256_loadu_pd(x + i)));
    acc1 = _mm256_add_pd(acc1, abs_pd(_mm256_loadu_pd(x + i + 4)));
  }
  for (; i + 4 <= n; i += 4) acc0 = _mm256_add_pd(acc0, abs_pd(_mm256_loadu_pd(x + i)));
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += std::fabs(x[i]);
  return s;
}

double abs_max_avx2(const double* x, std::size_t n) {
  __m256d m = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) m = _mm256_max_pd(m, abs_pd(_mm256_loadu_pd(x + i)));
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, m);
  double r = lanes[0];
  for (int k = 1; k < 4; ++k) r = lanes[k] > r ? lanes[k] : r;
  for (; i < n; ++i) {
    const double a = std::fabs(x[i]);
    if (a > r) r = a;
  }
  return r;
}

// No FMA in the element-wise kernels: they must round exactly like the
// scalar reference.
void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d prod = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), prod));
  }
  for (; i < n; ++i) y[i] = y[i] + a * x[i];
}

void scale_avx2(double a, double* x, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
  for (; i < n; ++i) x[i] *= a;
}

void rotate_avx2(double c, double s, double* x, double* y, std::size_t n) {
  const __m256d vc = _mm256_set1_pd(c);
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d xi = _mm256_loadu_pd(x + i);
    const __m256d yi = _mm256_loadu_pd(y + i);
    _mm256_storeu_pd(x + i, _mm256_sub_pd(_mm256_mul_pd(vc, xi), _mm256_mul_pd(vs, yi)));
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_mul_pd(vs, xi), _mm256_mul_pd(vc, yi)));
  }
  for (; i < n; ++i) {
    const double xi = x[i];
    const double yi = y[i];
    x[i] = c * xi - s * yi;
    y[i] = s * xi + c * yi;
  }
}

void soft_threshold_avx2(const double* x, double t, double* out, std::size_t n) {
  const __m256d vt = _mm256_set1_pd(t);
  const __m256d sign_bit = _mm256_set1_pd(-0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x + i);
    const __m256d keep = _mm256_cmp_pd(abs_pd(v), vt, _CMP_GT_OQ);
    const __m256d signed_t = _mm256_or_pd(vt, _mm256_and_pd(v, sign_bit));
    _mm256_storeu_pd(out + i, _mm256_and_pd(keep, _mm256_sub_pd(v, signed_t)));
  }
  for (; i < n; ++i) {
    const double v = x[i];
    out[i] = std::fabs(v) > t ? v - std::copysign(t, v) : 0.0;
  }
}

void clip_avx2(const double* x, double b, double* out, std::size_t n) {
  const __m256d hi = _mm256_set1_pd(b);
  const __m256d lo = _mm256_set1_pd(-b);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x + i);
    // max_pd(a, b) = a > b ? a : b, matching the scalar comparisons
    const __m256d l = _mm256_max_pd(v, lo);
    _mm256_storeu_pd(out + i, _mm256_min_pd(l, hi));
  }
  for (; i < n; ++i) {
    const double l = x[i] > -b ? x[i] : -b;
    out[i] = l < b ? l : b;
  }
}

constexpr Table kAvx2{
    dot_avx2,   sum_sq_avx2, abs_sum_avx2,         abs_max_avx2, axpy_avx2,
    scale_avx2, rotate_avx2, soft_threshold_avx2, clip_avx2,
};

}  // namespace

const Table* avx2_table_impl() noexcept { return &kAvx2; }

}  // namespace slr::kernels
