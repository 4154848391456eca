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

#include "slr/matrix.hpp"

namespace slr {

/// Entry-wise p-norms ("vector" norms of a matrix).
enum class EntryP { one, two, inf };

/// Induced operator norms ||M||_{p->q}.
enum class InducedMode { one_to_one, one_to_two, two_to_two, two_to_inf, inf_to_inf };

double entrywise_norm(const Matrix& M, EntryP p);
inline double norm_v1(const Matrix& M) { return entrywise_norm(M, EntryP::one); }
inline double norm_v2(const Matrix& M) { return entrywise_norm(M, EntryP::two); }
inline double norm_vinf(const Matrix& M) { return entrywise_norm(M, EntryP::inf); }

/// 1->1: max column abs sum; inf->inf: max row abs sum; 1->2: max column
/// Euclidean norm; 2->inf: max row Euclidean norm; 2->2: largest singular value.
double induced_norm(const Matrix& M, InducedMode mode);
inline double spectral_norm(const Matrix& M) { return induced_norm(M, InducedMode::two_to_two); }

/// Sum of singular values.
double trace_norm(const Matrix& M);

/// max{ rho * ||M||_{1->1}, ||M||_{inf->inf} / rho }. Throws ParameterError for rho <= 0.
double sharp_norm(const Matrix& M, double rho);

/// Largest matrix the exact flat-norm LP accepts (entries, i.e. m*n).
inline constexpr std::size_t kFlatNormMaxEntries = 256;

struct FlatNormSolution {
  double value = 0.0;
  Matrix maximizer;          // N with sharp_norm(N, rho) <= 1 attaining <M, N> = value
  double dual_bound = 0.0;   // objective of the LP dual; equals value at optimum
};

/// Dual norm of sharp_norm: sup { <M, N> : ||N||_sharp(rho) <= 1 }, solved
/// exactly as a linear program over N = N+ - N-.
///
/// Throws UnsupportedSizeError when m*n exceeds kFlatNormMaxEntries.
FlatNormSolution flat_norm_lp(const Matrix& M, double rho);
double flat_norm(const Matrix& M, double rho);

}  // namespace slr
