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

#include "slr/incoherence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "slr/error.hpp"
#include "slr/linalg.hpp"
#include "slr/norms.hpp"

namespace slr {

double IncoherenceProfile::alpha(double r) const { return std::max(r * a, b / r); }

double IncoherenceProfile::beta(double r) const { return rank == 0 ? 0.0 : u / r + v * r + w; }

double optimal_rho(double a, double b) {
  if (!(a >= 0.0) || !(b >= 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw ParameterError("optimal_rho: counts must be nonnegative and finite");
  }
  if (a == 0.0 || b == 0.0) return 1.0;
  return std::sqrt(b / a);
}

IncoherenceProfile profile(const SupportSet& support, const RowColSpace& space, std::optional<double> rho) {
  if (support.rows() != space.rows() || support.cols() != space.cols()) {
    throw DimensionError("profile: support and space live in different ambient dimensions");
  }
  if (rho && (!(*rho > 0.0) || !std::isfinite(*rho))) throw ParameterError("profile: rho must be positive");

  IncoherenceProfile p;
  p.m = support.rows();
  p.n = support.cols();
  p.support_size = support.size();
  p.rank = space.rank();
  p.m0 = support.max_per_column();
  p.n0 = support.max_per_row();
  p.a = static_cast<double>(p.m0);
  p.b = static_cast<double>(p.n0);

  if (p.rank > 0) {
    p.u = norm_vinf(matmul_nt(space.U(), space.U()));
    p.v = norm_vinf(matmul_nt(space.V(), space.V()));
    p.w = induced_norm(space.U(), InducedMode::two_to_inf) * induced_norm(space.V(), InducedMode::two_to_inf);
    p.gamma = norm_vinf(orth_matrix(space));
  }

  p.rho_star = optimal_rho(p.a, p.b);
  p.alpha_star = p.alpha(p.rho_star);
  p.beta_star = p.beta(p.rho_star);
  p.product = p.alpha_star * p.beta_star;
  p.rho = rho.value_or(p.rho_star);
  return p;
}

IncoherenceProfile profile(const TargetPair& target, std::optional<double> rho) {
  return profile(target.support, target.space, rho);
}

bool check_identifiability(const IncoherenceProfile& p) { return p.product < 1.0; }

std::string to_string(Formulation f) { return f == Formulation::constrained ? "constrained" : "regularized"; }

std::string ConditionVerdict::first_failure() const {
  if (!product_below_one) return "alpha*beta < 1";
  if (!lambda_below_max) return "lambda <= lambda_max";
  if (!lambda_above_min) return "lambda >= lambda_min > 0";
  return {};
}

ConditionVerdict check_conditions(const IncoherenceProfile& p, Formulation formulation, double c, double lambda,
                                  double mu, double eps_2to2, double eps_vinf) {
  if (!(c > 1.0) || !std::isfinite(c)) throw ParameterError("check_conditions: c must exceed 1");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ParameterError("check_conditions: lambda must be positive");
  const bool reg = formulation == Formulation::regularized;
  if (reg) {
    if (!(mu > 0.0)) throw ParameterError("check_conditions: mu must be positive");
    if (!(eps_2to2 >= 0.0) || !(eps_vinf >= 0.0)) throw ParameterError("check_conditions: eps terms must be >= 0");
  } else {
    mu = 0.0;
    eps_2to2 = 0.0;
    eps_vinf = 0.0;
  }

  ConditionVerdict v;
  v.formulation = formulation;
  v.rho = p.rho;
  v.c = c;
  v.lambda = lambda;
  v.mu = mu;
  v.alpha = p.alpha(p.rho);
  v.beta = p.beta(p.rho);
  v.gamma = p.gamma;
  v.eps_2to2 = eps_2to2;
  v.eps_vinf = eps_vinf;

  const double ab = v.alpha * v.beta;
  const double e22 = reg ? eps_2to2 / mu : 0.0;
  const double einf = reg ? eps_vinf / mu : 0.0;

  v.product_below_one = ab < 1.0;

  // Upper expression; an empty support (alpha = 0) leaves lambda unbounded.
  const double upper_num = (1.0 - ab) * (1.0 - c * e22) - c * v.alpha * einf - c * v.alpha * v.gamma;
  if (v.alpha == 0.0) {
    v.lambda_max = upper_num > 0.0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
  } else {
    v.lambda_max = upper_num / (c * v.alpha);
  }
  v.lambda_below_max = lambda <= v.lambda_max;

  const double lower_den = 1.0 - ab - c * ab;
  if (lower_den > 0.0) {
    v.lambda_min = c * (v.gamma + einf * (2.0 - ab)) / lower_den;
    v.lambda_above_min = lambda >= v.lambda_min;
  } else {
    v.lambda_min = std::numeric_limits<double>::infinity();
    v.lambda_above_min = false;
  }
  v.window_nonempty = v.product_below_one && lower_den > 0.0 && v.lambda_min <= v.lambda_max;
  return v;
}

namespace {

// Relative slack on the premise and interval checks so that parameters
// constructed exactly at a boundary are not rejected over the last ulp.
constexpr double kBoundarySlack = 1e-12;

bool at_most(double x, double limit) { return x <= limit * (1.0 + kBoundarySlack); }

[[noreturn]] void premise_failure(const std::string& what, double lhs, double rhs) {
  std::ostringstream msg;
  msg.precision(17);
  msg << "simplified_parameters: premise " << what << " violated (" << lhs << " vs " << rhs << ")";
  throw PreconditionError(msg.str());
}

}  // namespace

SimplifiedParameters simplified_parameters(const IncoherenceProfile& p, Formulation formulation, double eps_2to2,
                                           double eps_vinf) {
  if (!(eps_2to2 >= 0.0) || !(eps_vinf >= 0.0)) throw ParameterError("simplified_parameters: eps terms must be >= 0");
  const double alpha = p.alpha(p.rho);
  const double beta = p.beta(p.rho);
  const double gamma = p.gamma;
  if (alpha == 0.0) premise_failure("alpha > 0 (empty support gives no finite lambda)", alpha, 0.0);

  SimplifiedParameters out;
  if (formulation == Formulation::regularized) {
    if (!at_most(alpha * gamma, 1.0 / 41.0)) premise_failure("alpha*gamma <= 1/41", alpha * gamma, 1.0 / 41.0);
    if (!at_most(alpha * beta, 3.0 / 41.0)) premise_failure("alpha*beta <= 3/41", alpha * beta, 3.0 / 41.0);
    out.lambda = (15.0 / 82.0) / alpha;
    if (!at_most(7.5 * gamma, out.lambda)) premise_failure("7.5*gamma <= lambda", 7.5 * gamma, out.lambda);
    // The conditions at the premise boundary force eps_vinf / mu <= (2/15) lambda,
    // i.e. mu >= (15/2) eps_vinf / lambda; the reciprocal coefficient never passes.
    out.mu = std::max(4.0 * eps_2to2, 7.5 * eps_vinf / out.lambda);
  } else {
    if (gamma == 0.0) premise_failure("gamma > 0 (rank zero gives lambda = 0)", gamma, 0.0);
    if (!at_most(alpha * gamma, 1.0 / 15.0)) premise_failure("alpha*gamma <= 1/15", alpha * gamma, 1.0 / 15.0);
    if (!at_most(alpha * beta, 1.0 / 5.0)) premise_failure("alpha*beta <= 1/5", alpha * beta, 1.0 / 5.0);
    out.lambda = std::sqrt((5.0 / 3.0) * gamma / alpha);
    if (!at_most(5.0 * gamma, out.lambda)) premise_failure("5*gamma <= lambda", 5.0 * gamma, out.lambda);
    if (!at_most(out.lambda, 1.0 / (3.0 * alpha))) {
      premise_failure("lambda <= 1/(3*alpha)", out.lambda, 1.0 / (3.0 * alpha));
    }
  }
  return out;
}

Prop1Bounds proposition1_bounds(std::size_t m, std::size_t n, std::size_t r, std::size_t m0, std::size_t n0,
                                double u_inf, double v_inf) {
  if (m == 0 || n == 0) throw ParameterError("proposition1_bounds: dimensions must be positive");
  const double dm = static_cast<double>(m);
  const double dn = static_cast<double>(n);
  const double dr = static_cast<double>(r);
  const double root = std::sqrt(dm * dn);

  Prop1Bounds out;
  out.rho = std::sqrt(dn / dm);
  out.c1 = std::max(static_cast<double>(m0) * dr / dm, static_cast<double>(n0) * dr / dn);
  out.c2 = std::max(dm * u_inf * u_inf, dn * v_inf * v_inf);
  if (r == 0) {
    out.alpha_bound = std::numeric_limits<double>::infinity();
    out.beta_bound = 0.0;
    out.gamma_bound = 0.0;
    return out;
  }
  out.alpha_bound = out.c1 / dr * root;
  out.beta_bound = 3.0 * out.c2 * dr / root;
  out.gamma_bound = out.c2 * dr / root;
  return out;
}

}  // namespace slr
