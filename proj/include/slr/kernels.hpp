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

// Data-parallel inner loops used by the dense substrate.
//
// Every kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant. The variant is chosen once at startup from CPUID; it can be
// overridden with set_isa() (tests) or SLR_KERNELS=scalar in the environment.
//
// Element-wise kernels (axpy, scale, rotate, soft_threshold, clip) produce
// bit-identical results across variants. Reductions (dot, sum_sq, abs_sum)
// reassociate and agree to a few ulps of the accumulated magnitude.

#include <cstddef>
#include <string_view>

namespace slr::kernels {

enum class Isa { scalar, avx2 };

struct Table {
  double (*dot)(const double* x, const double* y, std::size_t n);
  double (*sum_sq)(const double* x, std::size_t n);
  double (*abs_sum)(const double* x, std::size_t n);
  double (*abs_max)(const double* x, std::size_t n);
  // y += a * x
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  // x *= a
  void (*scale)(double a, double* x, std::size_t n);
  // (x, y) <- (c*x - s*y, s*x + c*y)
  void (*rotate)(double c, double s, double* x, double* y, std::size_t n);
  // out = sign(x) * max(|x| - t, 0)
  void (*soft_threshold)(const double* x, double t, double* out, std::size_t n);
  // out = min(max(x, -b), b)
  void (*clip)(const double* x, double b, double* out, std::size_t n);
};

const Table& scalar_table() noexcept;
/// Returns nullptr when the variant was not compiled in.
const Table* avx2_table() noexcept;

bool cpu_supports(Isa isa) noexcept;
Isa active_isa() noexcept;
/// Throws ParameterError if the CPU or build lacks `isa`.
void set_isa(Isa isa);
std::string_view isa_name(Isa isa) noexcept;

const Table& active() noexcept;

inline double dot(const double* x, const double* y, std::size_t n) { return active().dot(x, y, n); }
inline double sum_sq(const double* x, std::size_t n) { return active().sum_sq(x, n); }
inline double abs_sum(const double* x, std::size_t n) { return active().abs_sum(x, n); }
inline double abs_max(const double* x, std::size_t n) { return active().abs_max(x, n); }
inline void axpy(double a, const double* x, double* y, std::size_t n) { active().axpy(a, x, y, n); }
inline void scale(double a, double* x, std::size_t n) { active().scale(a, x, n); }
inline void rotate(double c, double s, double* x, double* y, std::size_t n) {
  active().rotate(c, s, x, y, n);
}
inline void soft_threshold(const double* x, double t, double* out, std::size_t n) {
  active().soft_threshold(x, t, out, n);
}
inline void clip(const double* x, double b, double* out, std::size_t n) { active().clip(x, b, out, n); }

}  // namespace slr::kernels
