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

#include "slr/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "slr/error.hpp"

namespace slr {

namespace {

void require_gap(double ab, const char* who) {
  if (!(ab < 1.0)) {
    throw PreconditionError(std::string(who) + ": alpha*beta = " + std::to_string(ab) + " is not below 1");
  }
}

void require_c(double c, const char* who) {
  if (!(c > 1.0) || !std::isfinite(c)) throw ParameterError(std::string(who) + ": c must exceed 1");
}

// eps / mu, taken as 0 when eps = 0 so that the mu -> 0 limit is available.
double over_mu(double eps, double mu) { return eps == 0.0 ? 0.0 : eps / mu; }

}  // namespace

double bound_theorem2(const IncoherenceProfile& p, double c, double lambda, double eps_v1, double eps_star) {
  require_c(c, "bound_theorem2");
  if (!(lambda > 0.0)) throw ParameterError("bound_theorem2: lambda must be positive");
  if (!(eps_v1 >= 0.0) || !(eps_star >= 0.0)) throw ParameterError("bound_theorem2: eps terms must be >= 0");
  const double ab = p.alpha(p.rho) * p.beta(p.rho);
  require_gap(ab, "bound_theorem2");
  const double K = (2.0 - ab) / (1.0 - ab) / (1.0 - 1.0 / c);
  return (1.0 + K) * eps_v1 + K * eps_star / lambda;
}

double v2_from_v1(double x, double b) {
  if (!(b > 0.0)) throw ParameterError("v2_from_v1: b must be positive");
  if (std::isinf(b)) return x;
  return std::min(x, std::sqrt(2.0 * b * x));
}

Theorem3Bounds bound_theorem3(const IncoherenceProfile& p, double c, double lambda, double mu, double eps_2to2,
                              double eps_vinf, double eps_star_prime, std::size_t k_bar, std::size_t r_bar,
                              double b) {
  require_c(c, "bound_theorem3");
  if (!(lambda > 0.0)) throw ParameterError("bound_theorem3: lambda must be positive");
  if (!(mu >= 0.0)) throw ParameterError("bound_theorem3: mu must be >= 0");
  if (!(eps_2to2 >= 0.0) || !(eps_vinf >= 0.0) || !(eps_star_prime >= 0.0)) {
    throw ParameterError("bound_theorem3: eps terms must be >= 0");
  }
  if (mu == 0.0 && (eps_2to2 > 0.0 || eps_vinf > 0.0)) {
    throw ParameterError("bound_theorem3: mu = 0 requires zero perturbation");
  }
  const double alpha = p.alpha(p.rho);
  const double ab = alpha * p.beta(p.rho);
  require_gap(ab, "bound_theorem3");

  const double gap = 1.0 - ab;
  const double einf = over_mu(eps_vinf, mu);
  const double e22 = over_mu(eps_2to2, mu);
  const double k = static_cast<double>(k_bar);
  const double r = static_cast<double>(r_bar);
  const double K = lambda + p.gamma + einf;
  const double inv_c = 1.0 / (1.0 - 1.0 / c);

  Theorem3Bounds out;
  out.r_prime = (lambda + einf) * (2.0 * k / gap) * K + (1.0 + 2.0 * e22) * 2.0 * r * (2.0 * alpha / gap * K + 1.0 + 2.0 * e22);
  out.sparse_v1 =
      (out.r_prime * inv_c / lambda * mu + lambda * k * mu + 2.0 * std::sqrt(k * r) * mu + k * eps_vinf) / gap;
  out.sparse_v2 = v2_from_v1(out.sparse_v1, b);
  out.lowrank_star = std::sqrt(2.0 * r) * out.sparse_v2 + eps_star_prime + (out.r_prime * inv_c / 2.0 + 2.0 * r) * mu;
  return out;
}

}  // namespace slr
