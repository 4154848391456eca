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
#include <optional>
#include <string>

#include "slr/subspaces.hpp"

namespace slr {

/// Incoherence quantities of a target pair.
///
/// a and b are the induced 1->1 and inf->inf norms of sign(X_S), which for a
/// +-1 pattern are the largest column and row counts (m0 and n0). The
/// subspace terms are u = ||U U^T||_vinf, v = ||V V^T||_vinf,
/// w = ||U||_{2->inf} ||V||_{2->inf} and gamma = ||U V^T||_vinf.
struct IncoherenceProfile {
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t support_size = 0;  // k
  std::size_t rank = 0;          // r
  std::size_t m0 = 0;
  std::size_t n0 = 0;

  double a = 0.0;
  double b = 0.0;
  double u = 0.0;
  double v = 0.0;
  double w = 0.0;
  double gamma = 0.0;

  double rho_star = 1.0;
  double alpha_star = 0.0;
  double beta_star = 0.0;
  double product = 0.0;  // alpha_star * beta_star

  /// Point at which conditions are evaluated; rho_star unless the caller fixed it.
  double rho = 1.0;

  double alpha(double r) const;
  double beta(double r) const;
  double alpha_at_rho() const { return alpha(rho); }
  double beta_at_rho() const { return beta(rho); }
};

IncoherenceProfile profile(const SupportSet& support, const RowColSpace& space,
                           std::optional<double> rho = std::nullopt);
IncoherenceProfile profile(const TargetPair& target, std::optional<double> rho = std::nullopt);

/// Minimizer of alpha(rho) over rho > 0: sqrt(b/a), or 1 when a or b is zero.
/// Throws ParameterError for negative or non-finite input.
double optimal_rho(double a, double b);

/// True iff alpha(rho*) * beta(rho*) < 1.
bool check_identifiability(const IncoherenceProfile& p);

enum class Formulation { constrained, regularized };

std::string to_string(Formulation f);

/// Outcome of the three recovery conditions at the profile's rho.
struct ConditionVerdict {
  Formulation formulation = Formulation::regularized;
  double rho = 1.0;
  double c = 2.0;
  double lambda = 0.0;
  double mu = 0.0;  // unused (0) for the constrained formulation
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double eps_2to2 = 0.0;
  double eps_vinf = 0.0;

  bool product_below_one = false;  // alpha beta < 1
  bool lambda_below_max = false;   // lambda <= upper expression
  bool lambda_above_min = false;   // lambda >= lower expression and lower denominator > 0
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  bool window_nonempty = false;

  bool passed() const noexcept { return product_below_one && lambda_below_max && lambda_above_min; }
  /// Name of the first failing inequality, empty when all pass.
  std::string first_failure() const;
};

/// Evaluates the conditions for the chosen formulation. For the constrained
/// formulation mu and the eps terms are ignored (taken as zero).
/// Throws ParameterError unless c > 1 and lambda > 0 (and mu > 0 for the
/// regularized formulation).
ConditionVerdict check_conditions(const IncoherenceProfile& p, Formulation formulation, double c, double lambda,
                                  double mu = 0.0, double eps_2to2 = 0.0, double eps_vinf = 0.0);

struct SimplifiedParameters {
  double lambda = 0.0;
  std::optional<double> mu;  // set for the regularized formulation only
};

/// Parameter choice under the simplified premises (c = 2).
///
///   regularized: alpha gamma <= 1/41, alpha beta <= 3/41,
///                lambda = (15/82)/alpha, mu = max{4 eps22, (15/2) eps_vinf / lambda}
///   constrained: alpha gamma <= 1/15, alpha beta <= 1/5,
///                lambda = sqrt((5/3) gamma / alpha)
///
/// The resulting lambda is checked against its interval ([7.5 gamma,
/// (15/82)/alpha] or [5 gamma, 1/(3 alpha)]). Throws PreconditionError naming
/// the violated inequality, including alpha = 0 or (constrained) gamma = 0,
/// where no positive lambda is produced.
SimplifiedParameters simplified_parameters(const IncoherenceProfile& p, Formulation formulation,
                                           double eps_2to2 = 0.0, double eps_vinf = 0.0);

struct Prop1Bounds {
  double rho = 1.0;  // sqrt(n/m)
  double c1 = 0.0;
  double c2 = 0.0;
  double alpha_bound = 0.0;
  double beta_bound = 0.0;
  double gamma_bound = 0.0;
};

/// Dimension-explicit upper bounds with inferred constants
/// c1 = max(m0 r/m, n0 r/n), c2 = max(m ||U||_vinf^2, n ||V||_vinf^2).
/// For r = 0 the alpha bound is +infinity and the other two are zero.
Prop1Bounds proposition1_bounds(std::size_t m, std::size_t n, std::size_t r, std::size_t m0, std::size_t n0,
                                double u_inf, double v_inf);

}  // namespace slr
