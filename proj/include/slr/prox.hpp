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

#include <limits>

#include "slr/matrix.hpp"

namespace slr {

inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();

/// Entry-wise sign(x) max(|x| - t, 0); entries with |x| == t map to 0.
/// Throws ParameterError for t < 0.
Matrix soft_threshold(const Matrix& M, double t);

/// Singular value thresholding: U diag(max(s - tau, 0)) V^T.
Matrix svt(const Matrix& M, double tau);

/// Entry-wise minimizer of 1/2 (x - v)^2 + t |x| over x in [center - b, center + b].
/// b may be kUnbounded. Throws ParameterError for b <= 0 or t < 0.
Matrix prox_l1_box(const Matrix& V, const Matrix& center, double t, double b);

/// Entry-wise min(max(x, -b), b). Throws ParameterError for b <= 0.
Matrix clip_entries(const Matrix& M, double b);

/// Euclidean projection onto { X : ||X||_v1 <= eps }.
Matrix project_l1_ball(const Matrix& M, double eps);

/// Euclidean projection onto { X : ||X||_* <= eps }.
Matrix project_nuclear_ball(const Matrix& M, double eps);

}  // namespace slr
