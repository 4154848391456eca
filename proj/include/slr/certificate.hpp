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

#include <cstdint>
#include <string>
#include <vector>

#include "slr/incoherence.hpp"
#include "slr/rng.hpp"
#include "slr/subspaces.hpp"

namespace slr {

/// One norm inequality of the dual certificate: measured vs bound.
struct BoundCheck {
  std::string name;
  double measured = 0.0;
  double bound = 0.0;
  bool satisfied = false;
};

/// Tolerance policy for BoundCheck: measured <= bound (1 + 1e-8) + 1e-10.
bool within_bound(double measured, double bound) noexcept;

struct DualCertificate {
  Matrix Q_omega;  // supported on the support set
  Matrix Q_T;      // in the tangent space
  double lambda = 0.0;
  double mu = 0.0;
  double c = 2.0;
  Matrix E;

  double eps_2to2 = 0.0;        // ||E||_{2->2}
  double eps_vinf = 0.0;        // ||E||_vinf + ||P_T(E)||_vinf
  double eps_star_prime = 0.0;  // ||P_T(E)||_*

  double residual_omega = 0.0;  // ||P_Omega(Q + E/mu) - lambda sign(X_S)||_vinf
  double residual_T = 0.0;      // ||P_T(Q + E/mu) - orth(X_L)||_vinf
  double complement_vinf = 0.0;   // ||P_Omega^perp(Q + E/mu)||_vinf, cap lambda/c
  double complement_2to2 = 0.0;   // ||P_T^perp(Q + E/mu)||_{2->2}, cap 1/c

  int iterations_omega = 0;
  int iterations_T = 0;
  double contraction_omega = 0.0;
  double contraction_T = 0.0;

  /// Q_omega + Q_T + E/mu
  Matrix total() const;
};

/// Perturbation statistics used by the conditions and bounds.
struct PerturbationStats {
  double eps_2to2 = 0.0;
  double eps_vinf = 0.0;
  double eps_star_prime = 0.0;
};

PerturbationStats perturbation_stats(const RowColSpace& space, const Matrix& E);

/// Builds (Q_omega, Q_T) by Neumann inversion of the two defining equations.
///
/// Conditions are checked first at the profile's rho* with the eps terms of
/// E; a failing condition raises PreconditionError naming it. Neumann
/// non-convergence propagates as ConvergenceError. mu must be positive even
/// when E = 0 (it then has no effect).
DualCertificate build_certificate(const TargetPair& target, const Matrix& E, double lambda, double mu, double c,
                                  double tol = 1e-12);

/// The seven norm bounds, evaluated at the profile's rho with the
/// certificate's stored lambda, mu, c and eps terms.
std::vector<BoundCheck> verify_bounds(const DualCertificate& cert, const IncoherenceProfile& profile);

struct SubgradientReport {
  double v1_equality_residual = 0.0;     // ||P_Omega(Q) - lambda sign||_vinf
  double v1_norm = 0.0;                  // ||Q||_vinf, must not exceed lambda
  double trace_equality_residual = 0.0;  // ||P_T(Q) - orth||_vinf
  double trace_norm_2to2 = 0.0;          // ||Q||_{2->2}, must not exceed 1
  bool v1_member = false;
  bool trace_member = false;
  /// Largest value of rhs - lhs of the subgradient inequality over the probes;
  /// zero or negative means no violation.
  double worst_violation = 0.0;
};

/// rhs - lhs of g(X) - g(Xbar) >= <Q, dS + dL> + (1 - 1/c)(lambda ||P_Omega^perp dS||_v1 + ||P_T^perp dL||_*)
/// for g = lambda ||.||_v1 + ||.||_*, at a single point (X_S, X_L).
double subgradient_gap(const TargetPair& target, const Matrix& Q, double lambda, double c, const Matrix& X_S,
                       const Matrix& X_L);

/// Membership of Q in both subdifferentials (1e-9 relative slack on the norm
/// caps, 1e-8 absolute on the equalities) plus the inequality on `probes`
/// random points around the target.
SubgradientReport subgradient_check(const TargetPair& target, const Matrix& Q, double lambda, double c, int probes,
                                    Seed seed);

}  // namespace slr
