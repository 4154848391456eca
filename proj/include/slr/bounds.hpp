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

#include "slr/incoherence.hpp"
#include "slr/prox.hpp"

namespace slr {

/// Error bound for the constrained program:
///   (1 + K) eps_v1 + K eps_star / lambda,  K = (1 - 1/c)^{-1} (2 - ab)/(1 - ab)
/// with ab = alpha(rho) beta(rho) at the profile's rho.
/// Throws PreconditionError when ab >= 1 and ParameterError unless c > 1, lambda > 0.
double bound_theorem2(const IncoherenceProfile& p, double c, double lambda, double eps_v1, double eps_star);

/// min{x, sqrt(2 b x)}: the Frobenius refinement of an entry-wise 1-norm
/// error bound x when the estimate is boxed to [-b, b] (b may be kUnbounded).
double v2_from_v1(double x, double b);

struct Theorem3Bounds {
  double r_prime = 0.0;
  double sparse_v1 = 0.0;
  double sparse_v2 = 0.0;  // min{sparse_v1, sqrt(2 b sparse_v1)}
  double lowrank_star = 0.0;
};

/// Error bounds for the regularized program with box parameter b on
/// ||X_S - Y||_vinf (kUnbounded allowed). k_bar and r_bar are the support
/// size and rank of the target.
/// Throws PreconditionError when 1 - alpha beta <= 0.
Theorem3Bounds bound_theorem3(const IncoherenceProfile& p, double c, double lambda, double mu, double eps_2to2,
                              double eps_vinf, double eps_star_prime, std::size_t k_bar, std::size_t r_bar,
                              double b = kUnbounded);

}  // namespace slr
