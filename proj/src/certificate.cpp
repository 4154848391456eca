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

#include "slr/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "slr/error.hpp"
#include "slr/linalg.hpp"
#include "slr/norms.hpp"

namespace slr {

bool within_bound(double measured, double bound) noexcept { return measured <= bound * (1.0 + 1e-8) + 1e-10; }

Matrix DualCertificate::total() const { return Q_omega + Q_T + E * (1.0 / mu); }

PerturbationStats perturbation_stats(const RowColSpace& space, const Matrix& E) {
  PerturbationStats s;
  if (norm_vinf(E) == 0.0) return s;
  const Matrix PE = project_T(space, E);
  s.eps_2to2 = spectral_norm(E);
  s.eps_vinf = norm_vinf(E) + norm_vinf(PE);
  s.eps_star_prime = trace_norm(PE);
  return s;
}

DualCertificate build_certificate(const TargetPair& target, const Matrix& E, double lambda, double mu, double c,
                                  double tol) {
  require_same_shape(target.sparse, E, "build_certificate");
  require_finite(E, "perturbation E");
  if (!(mu > 0.0) || !std::isfinite(mu)) throw ParameterError("build_certificate: mu must be positive");
  if (!(tol > 0.0)) throw ParameterError("build_certificate: tol must be positive");

  const PerturbationStats stats = perturbation_stats(target.space, E);
  const IncoherenceProfile prof = profile(target);
  const ConditionVerdict verdict =
      check_conditions(prof, Formulation::regularized, c, lambda, mu, stats.eps_2to2, stats.eps_vinf);
  if (!verdict.passed()) {
    throw PreconditionError("build_certificate: condition '" + verdict.first_failure() + "' fails (alpha*beta = " +
                            std::to_string(verdict.alpha * verdict.beta) + ", lambda window [" +
                            std::to_string(verdict.lambda_min) + ", " + std::to_string(verdict.lambda_max) + "])");
  }

  const SupportSet& omega = target.support;
  const RowColSpace& T = target.space;
  const Matrix sgn = sign_matrix(target.sparse);
  const Matrix orth = orth_matrix(T);
  const Matrix scaled_E = E * (1.0 / mu);

  DualCertificate cert;
  cert.lambda = lambda;
  cert.mu = mu;
  cert.c = c;
  cert.E = E;
  cert.eps_2to2 = stats.eps_2to2;
  cert.eps_vinf = stats.eps_vinf;
  cert.eps_star_prime = stats.eps_star_prime;

  const NeumannOptions opts{tol};
  {
    Matrix rhs = lambda * sgn - project_support(omega, orth) -
                 project_support(omega, project_T_complement(T, scaled_E));
    NeumannResult r = neumann_inverse(omega, T, NeumannSide::omega, rhs, opts);
    cert.Q_omega = std::move(r.x);
    cert.iterations_omega = r.iterations;
    cert.contraction_omega = r.contraction;
  }
  {
    Matrix rhs = orth - lambda * project_T(T, sgn) - project_T(T, project_support_complement(omega, scaled_E));
    NeumannResult r = neumann_inverse(omega, T, NeumannSide::tangent, rhs, opts);
    cert.Q_T = std::move(r.x);
    cert.iterations_T = r.iterations;
    cert.contraction_T = r.contraction;
  }

  const Matrix Q = cert.total();
  cert.residual_omega = norm_vinf(project_support(omega, Q) - lambda * sgn);
  cert.residual_T = norm_vinf(project_T(T, Q) - orth);
  cert.complement_vinf = norm_vinf(project_support_complement(omega, Q));
  cert.complement_2to2 = spectral_norm(project_T_complement(T, Q));
  return cert;
}

std::vector<BoundCheck> verify_bounds(const DualCertificate& cert, const IncoherenceProfile& p) {
  const double alpha = p.alpha(p.rho);
  const double ab = alpha * p.beta(p.rho);
  const double einf = cert.eps_vinf / cert.mu;
  const double e22 = cert.eps_2to2 / cert.mu;
  const double K = cert.lambda + p.gamma + einf;
  const double gap = 1.0 - ab;
  const double k_bar = static_cast<double>(p.support_size);
  const double r_bar = static_cast<double>(p.rank);

  const double qo_22 = spectral_norm(cert.Q_omega);
  const double qt_22 = spectral_norm(cert.Q_T);
  const double qt_star = trace_norm(cert.Q_T);
  const double qo_v1 = norm_v1(cert.Q_omega);
  const double qo_vinf = norm_vinf(cert.Q_omega);
  const double sum_v2 = norm_v2(cert.Q_omega + cert.Q_T);

  std::vector<BoundCheck> out = {
      {"Q_omega_2to2", qo_22, alpha / gap * K},
      {"Q_T_2to2", qt_22, 2.0 * alpha / gap * K + 1.0 + 2.0 * e22},
      {"Q_T_trace", qt_star, 2.0 * r_bar * qt_22},
      {"Q_T_vinf", norm_vinf(cert.Q_T), K / gap},
      {"Q_omega_vinf", qo_vinf, 2.0 * K / gap},
      {"Q_omega_v1", qo_v1, k_bar * qo_vinf},
      {"Q_sum_v2_squared", sum_v2 * sum_v2,
       cert.lambda * qo_v1 * (1.0 + einf / cert.lambda) + qt_star * (1.0 + 2.0 * e22)},
  };
  for (BoundCheck& b : out) b.satisfied = within_bound(b.measured, b.bound);
  return out;
}

double subgradient_gap(const TargetPair& target, const Matrix& Q, double lambda, double c, const Matrix& X_S,
                       const Matrix& X_L) {
  const Matrix dS = X_S - target.sparse;
  const Matrix dL = X_L - target.lowrank;
  const double lhs = lambda * (norm_v1(X_S) - norm_v1(target.sparse)) + (trace_norm(X_L) - trace_norm(target.lowrank));
  const double rhs = frobenius_inner(Q, dS + dL) +
                     (1.0 - 1.0 / c) * (lambda * norm_v1(project_support_complement(target.support, dS)) +
                                        trace_norm(project_T_complement(target.space, dL)));
  return rhs - lhs;
}

SubgradientReport subgradient_check(const TargetPair& target, const Matrix& Q, double lambda, double c, int probes,
                                    Seed seed) {
  require_same_shape(target.sparse, Q, "subgradient_check");
  SubgradientReport rep;
  rep.v1_equality_residual = norm_vinf(project_support(target.support, Q) - lambda * sign_matrix(target.sparse));
  rep.v1_norm = norm_vinf(Q);
  rep.trace_equality_residual = norm_vinf(project_T(target.space, Q) - orth_matrix(target.space));
  rep.trace_norm_2to2 = spectral_norm(Q);
  rep.v1_member = rep.v1_equality_residual <= 1e-8 && rep.v1_norm <= lambda * (1.0 + 1e-9);
  rep.trace_member = rep.trace_equality_residual <= 1e-8 && rep.trace_norm_2to2 <= 1.0 + 1e-9;

  // Probe directions mix unstructured Gaussian moves with moves confined to
  // the complements, where the (1 - 1/c) term is active.
  Rng rng(seed);
  const std::size_t m = target.rows();
  const std::size_t n = target.cols();
  rep.worst_violation = probes > 0 ? -std::numeric_limits<double>::infinity() : 0.0;
  for (int k = 0; k < probes; ++k) {
    const double scale = std::pow(10.0, rng.uniform(-3.0, 1.0));
    Matrix dS = gaussian_matrix(m, n, rng) * scale;
    Matrix dL = gaussian_matrix(m, n, rng) * scale;
    switch (k % 4) {
      case 1:
        dS = project_support_complement(target.support, dS);
        break;
      case 2:
        dL = project_T_complement(target.space, dL);
        break;
      case 3:
        dS = project_support_complement(target.support, dS);
        dL = project_T_complement(target.space, dL);
        break;
      default:
        break;
    }
    const double v = subgradient_gap(target, Q, lambda, c, target.sparse + dS, target.lowrank + dL);
    rep.worst_violation = std::max(rep.worst_violation, v);
  }
  return rep;
}

}  // namespace slr
