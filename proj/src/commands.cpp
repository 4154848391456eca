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

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "slr/bounds.hpp"
#include "slr/certificate.hpp"
#include "slr/cli.hpp"
#include "slr/csv_io.hpp"
#include "slr/error.hpp"
#include "slr/incoherence.hpp"
#include "slr/norms.hpp"
#include "slr/solvers.hpp"

namespace slr::cli {

namespace {

using json = nlohmann::ordered_json;

void write_json(const std::filesystem::path& path, const json& j) { write_file_atomic(path, j.dump(2) + "\n"); }

template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const PreconditionError& e) {
    err << "precondition failed: " << e.what() << "\n";
    return kPrecondition;
  } catch (const ConvergenceError& e) {
    err << "no convergence: " << e.what() << "\n";
    return kNotConverged;
  } catch (const FactorizationError& e) {
    err << "no convergence: " << e.what() << "\n";
    return kNotConverged;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  }
}

double standard_lambda(std::size_t m, std::size_t n) { return 1.0 / std::sqrt(static_cast<double>(std::max(m, n))); }

struct DerivedLambda {
  double value = 0.0;
  std::string source;
};

// simplified rule when its premises hold, else the middle of the condition
// window when it is nonempty, else the standard 1/sqrt(max(m, n)).
DerivedLambda derive_lambda(const IncoherenceProfile& p, Formulation f, double c) {
  try {
    return {simplified_parameters(p, f).lambda, "simplified"};
  } catch (const PreconditionError&) {
  }
  const ConditionVerdict probe = check_conditions(p, f, c, 1.0, 1.0);
  if (probe.window_nonempty) {
    const double hi = std::isfinite(probe.lambda_max) ? probe.lambda_max : std::max(2.0 * probe.lambda_min, 1.0);
    const double lo = std::max(probe.lambda_min, std::numeric_limits<double>::min());
    return {0.5 * (lo + hi), "window_midpoint"};
  }
  return {standard_lambda(p.m, p.n), "standard"};
}

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

int cmd_decompose(const DecomposeOptions& o, std::ostream& err) {
  return guarded(err, [&]() -> int {
    const Matrix Y = read_csv(o.input);
    const double lambda = o.lambda.value_or(standard_lambda(Y.rows(), Y.cols()));
    const auto start = std::chrono::steady_clock::now();
    SolveReport rep;
    json mu_or_eps;
    if (o.mode == "regularized") {
      if (!o.mu) throw ParameterError("--mu is required for the regularized mode");
      RegularizedConfig cfg;
      cfg.lambda = lambda;
      cfg.mu = *o.mu;
      cfg.b = o.b;
      cfg.tol = o.tol.value_or(cfg.tol);
      cfg.max_iter = o.max_iter;
      rep = solve_regularized(Y, cfg);
      mu_or_eps = cfg.mu;
    } else if (o.mode == "constrained") {
      ConstrainedConfig cfg;
      cfg.lambda = lambda;
      cfg.eps_v1 = o.eps_v1;
      cfg.eps_star = o.eps_star;
      cfg.b = o.b;
      cfg.primal_tol = cfg.dual_tol = o.tol.value_or(cfg.primal_tol);
      cfg.max_iter = o.max_iter;
      cfg.admm_penalty = o.penalty;
      cfg.adaptive_penalty = o.adaptive_penalty;
      rep = solve_constrained(Y, cfg);
      mu_or_eps = json::array({cfg.eps_v1, cfg.eps_star});
    } else {
      throw ParameterError("unknown mode '" + o.mode + "'");
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    json report;
    report["mode"] = o.mode;
    report["lambda"] = lambda;
    report["mu_or_eps"] = mu_or_eps;
    report["iterations"] = rep.iterations;
    report["converged"] = rep.converged;
    report["objective"] = rep.objective;
    report["residual_v1"] = rep.residual_v1;
    report["residual_star"] = rep.residual_star;
    report["residual_v2"] = rep.residual_v2;
    report["wall_time_seconds"] = wall;
    if (o.true_sparse || o.true_lowrank) {
      if (!o.true_sparse || !o.true_lowrank) {
        throw ParameterError("--true-sparse and --true-lowrank must be given together");
      }
      const RecoveryErrors e =
          recovery_errors(rep.X_S, rep.X_L, read_csv(*o.true_sparse), read_csv(*o.true_lowrank));
      report["sparse_relative_error"] = e.sparse_relative;
      report["lowrank_relative_error"] = e.lowrank_relative;
      report["sparse_error_v1"] = e.sparse_v1;
      report["lowrank_error_v1"] = e.lowrank_v1;
      report["lowrank_error_star"] = e.lowrank_star;
    }
    write_csv(o.out_sparse, rep.X_S);
    write_csv(o.out_lowrank, rep.X_L);
    write_json(o.report, report);
    for (const std::string& w : rep.warnings) err << "warning: " << w << "\n";
    return rep.converged ? kOk : kNotConverged;
  });
}

int cmd_diagnose(const DiagnoseOptions& o, std::ostream& err) {
  return guarded(err, [&]() -> int {
    const TargetPair target = TargetPair::of(read_csv(o.sparse), read_csv(o.lowrank));
    const IncoherenceProfile p = profile(target, o.rho);
    const double u_inf = p.rank > 0 ? norm_vinf(target.space.U()) : 0.0;
    const double v_inf = p.rank > 0 ? norm_vinf(target.space.V()) : 0.0;
    const Prop1Bounds prop = proposition1_bounds(p.m, p.n, p.rank, p.m0, p.n0, u_inf, v_inf);

    json r;
    r["m"] = p.m;
    r["n"] = p.n;
    r["support_size"] = p.support_size;
    r["rank"] = p.rank;
    r["m0"] = p.m0;
    r["n0"] = p.n0;
    r["a"] = p.a;
    r["b"] = p.b;
    r["u"] = p.u;
    r["v"] = p.v;
    r["w"] = p.w;
    r["gamma"] = p.gamma;
    r["rho_star"] = p.rho_star;
    r["alpha_star"] = p.alpha_star;
    r["beta_star"] = p.beta_star;
    r["alpha_beta"] = p.product;
    r["identifiable"] = check_identifiability(p);
    r["rho"] = p.rho;
    r["alpha"] = p.alpha(p.rho);
    r["beta"] = p.beta(p.rho);
    r["c"] = o.c;
    r["count_bound_c1"] = prop.c1;
    r["count_bound_c2"] = prop.c2;
    r["count_bound_alpha_bound"] = number_or_null(prop.alpha_bound);
    r["count_bound_beta_bound"] = prop.beta_bound;
    r["count_bound_gamma_bound"] = prop.gamma_bound;

    for (Formulation f : {Formulation::constrained, Formulation::regularized}) {
      const std::string key = to_string(f);
      DerivedLambda lam = o.lambda ? DerivedLambda{*o.lambda, "given"} : derive_lambda(p, f, o.c);
      const double mu = o.mu.value_or(1.0);
      const ConditionVerdict v = check_conditions(p, f, o.c, lam.value, mu);
      r[key + "_lambda"] = lam.value;
      r[key + "_lambda_source"] = lam.source;
      if (f == Formulation::regularized) r[key + "_mu"] = mu;
      r[key + "_alpha_beta_below_one"] = v.product_below_one;
      r[key + "_lambda_below_max"] = v.lambda_below_max;
      r[key + "_lambda_above_min"] = v.lambda_above_min;
      r[key + "_lambda_min"] = number_or_null(v.lambda_min);
      r[key + "_lambda_max"] = number_or_null(v.lambda_max);
      r[key + "_window_nonempty"] = v.window_nonempty;
      r[key + "_passed"] = v.passed();
    }
    write_json(o.report, r);
    return kOk;
  });
}

int cmd_certify(const CertifyOptions& o, std::ostream& err) {
  return guarded(err, [&]() -> int {
    const TargetPair target = TargetPair::of(read_csv(o.sparse), read_csv(o.lowrank));
    const Matrix E = o.noise ? read_csv(*o.noise) : Matrix(target.rows(), target.cols());
    const DualCertificate cert = build_certificate(target, E, o.lambda, o.mu, o.c, o.tol);
    const IncoherenceProfile p = profile(target);
    const std::vector<BoundCheck> checks = verify_bounds(cert, p);

    constexpr double kResidualTol = 1e-8;
    const bool residuals_ok = cert.residual_omega <= kResidualTol && cert.residual_T <= kResidualTol;
    const bool caps_ok = within_bound(cert.complement_vinf, o.lambda / o.c) && within_bound(cert.complement_2to2, 1.0 / o.c);
    bool all = residuals_ok && caps_ok;

    json r;
    r["lambda"] = o.lambda;
    r["mu"] = o.mu;
    r["c"] = o.c;
    r["alpha_beta"] = p.product;
    r["eps_2to2"] = cert.eps_2to2;
    r["eps_vinf"] = cert.eps_vinf;
    r["eps_star_prime"] = cert.eps_star_prime;
    r["residual_omega"] = cert.residual_omega;
    r["residual_T"] = cert.residual_T;
    r["complement_vinf"] = cert.complement_vinf;
    r["complement_vinf_cap"] = o.lambda / o.c;
    r["complement_2to2"] = cert.complement_2to2;
    r["complement_2to2_cap"] = 1.0 / o.c;
    r["neumann_iterations_omega"] = cert.iterations_omega;
    r["neumann_iterations_T"] = cert.iterations_T;
    r["neumann_contraction_omega"] = cert.contraction_omega;
    r["neumann_contraction_T"] = cert.contraction_T;
    for (const BoundCheck& b : checks) {
      r[b.name + "_measured"] = b.measured;
      r[b.name + "_bound"] = b.bound;
      r[b.name + "_satisfied"] = b.satisfied;
      all = all && b.satisfied;
    }
    r["all_satisfied"] = all;
    write_json(o.report, r);
    if (!all) err << "certificate check failed; see " << o.report.string() << "\n";
    return all ? kOk : kPrecondition;
  });
}

int cmd_generate(const GenerateOptions& o, std::ostream& err) {
  return guarded(err, [&]() -> int {
    const GeneratedInstance inst = gen_instance(o.spec);
    write_csv(o.out_prefix + "_Y.csv", inst.Y);
    write_csv(o.out_prefix + "_sparse.csv", inst.target.sparse);
    write_csv(o.out_prefix + "_lowrank.csv", inst.target.lowrank);
    write_csv(o.out_prefix + "_noise.csv", inst.E);
    const IncoherenceProfile& p = inst.profile;
    json r;
    r["m"] = p.m;
    r["n"] = p.n;
    r["rank"] = p.rank;
    r["ktilde"] = o.spec.ktilde;
    r["support_size"] = p.support_size;
    r["seed"] = o.spec.seed.value;
    r["sigma"] = o.spec.sigma;
    r["m0"] = p.m0;
    r["n0"] = p.n0;
    r["u"] = p.u;
    r["v"] = p.v;
    r["w"] = p.w;
    r["gamma"] = p.gamma;
    r["rho_star"] = p.rho_star;
    r["alpha_star"] = p.alpha_star;
    r["beta_star"] = p.beta_star;
    r["alpha_beta"] = p.product;
    r["identifiable"] = check_identifiability(p);
    r["eps_2to2"] = inst.stats.eps_2to2;
    r["eps_vinf"] = inst.stats.eps_vinf;
    r["eps_star_prime"] = inst.stats.eps_star_prime;
    write_json(o.out_prefix + "_profile.json", r);
    return kOk;
  });
}

std::vector<std::size_t> parse_rank_range(const std::string& text) {
  const auto colon = text.find(':');
  auto to_size = [&](const std::string& s) -> std::size_t {
    std::size_t pos = 0;
    long long v = 0;
    try {
      v = std::stoll(s, &pos);
    } catch (const std::exception&) {
      pos = std::string::npos;
    }
    if (pos != s.size() || v < 0) throw ParameterError("bad rank range '" + text + "'");
    return static_cast<std::size_t>(v);
  };
  const std::size_t lo = to_size(text.substr(0, colon));
  const std::size_t hi = colon == std::string::npos ? lo : to_size(text.substr(colon + 1));
  if (hi < lo) throw ParameterError("empty rank range '" + text + "'");
  std::vector<std::size_t> out;
  for (std::size_t r = lo; r <= hi; ++r) out.push_back(r);
  return out;
}

std::vector<double> parse_density_range(const std::string& text) {
  std::vector<double> parts;
  std::size_t start = 0;
  for (;;) {
    const auto colon = text.find(':', start);
    const std::string field = text.substr(start, colon == std::string::npos ? std::string::npos : colon - start);
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(field, &pos);
    } catch (const std::exception&) {
      pos = std::string::npos;
    }
    if (pos != field.size() || !std::isfinite(v)) throw ParameterError("bad density range '" + text + "'");
    parts.push_back(v);
    if (colon == std::string::npos) break;
    start = colon + 1;
  }
  if (parts.size() == 1) parts = {parts[0], parts[0], 1.0};
  if (parts.size() != 3 || parts[0] < 0.0 || parts[1] > 1.0 || parts[1] < parts[0] || !(parts[2] > 0.0)) {
    throw ParameterError("density range must be lo:hi:step with 0 <= lo <= hi <= 1 and step > 0");
  }
  std::vector<double> out;
  for (std::size_t k = 0;; ++k) {
    const double d = parts[0] + static_cast<double>(k) * parts[2];
    if (d > parts[1] + 1e-9 * parts[2]) break;
    out.push_back(std::min(d, parts[1]));
  }
  return out;
}

std::uint64_t sweep_cell_seed(std::uint64_t base, std::size_t rank, std::size_t density_index, int trial) {
  std::uint64_t h = mix64(static_cast<std::uint64_t>(rank));
  h = mix64(h ^ static_cast<std::uint64_t>(density_index));
  h = mix64(h ^ static_cast<std::uint64_t>(trial));
  return base ^ h;
}

namespace {

struct SweepCell {
  std::size_t rank = 0;
  std::size_t density_index = 0;
  int trial = 0;
};

struct SweepRow {
  std::uint64_t seed = 0;
  std::size_t ktilde = 0;
  std::size_t support_size = 0;
  double alpha_beta = std::numeric_limits<double>::quiet_NaN();
  double lambda = std::numeric_limits<double>::quiet_NaN();
  int iterations = 0;
  bool converged = false;
  double sparse_error = std::numeric_limits<double>::quiet_NaN();
  double lowrank_error = std::numeric_limits<double>::quiet_NaN();
  bool success = false;
};

SweepRow run_cell(const SweepOptions& o, const SweepCell& cell) {
  SweepRow row;
  row.seed = sweep_cell_seed(o.seed, cell.rank, cell.density_index, cell.trial);
  const double mn = static_cast<double>(o.m) * static_cast<double>(o.n);
  row.ktilde = static_cast<std::size_t>(std::llround(o.densities[cell.density_index] * mn));
  try {
    InstanceSpec spec;
    spec.m = o.m;
    spec.n = o.n;
    spec.rank = cell.rank;
    spec.ktilde = row.ktilde;
    spec.seed = Seed{row.seed};
    const GeneratedInstance inst = gen_instance(spec);
    row.support_size = inst.profile.support_size;
    row.alpha_beta = inst.profile.product;
    row.lambda = standard_lambda(o.m, o.n);
    if (o.lambda_rule == "theory") {
      try {
        row.lambda = simplified_parameters(inst.profile, Formulation::constrained).lambda;
      } catch (const PreconditionError&) {
      }
    }
    SolveReport rep;
    if (o.solver == "constrained") {
      ConstrainedConfig cfg;
      cfg.lambda = row.lambda;
      cfg.primal_tol = cfg.dual_tol = o.tol;
      cfg.max_iter = o.max_iter;
      rep = solve_constrained(inst.Y, cfg);
    } else {
      RegularizedConfig cfg;
      cfg.lambda = row.lambda;
      cfg.mu = o.mu;
      cfg.tol = o.tol;
      cfg.max_iter = o.max_iter;
      rep = solve_regularized(inst.Y, cfg);
    }
    row.iterations = rep.iterations;
    row.converged = rep.converged;
    const RecoveryErrors e = recovery_errors(rep.X_S, rep.X_L, inst.target.sparse, inst.target.lowrank);
    row.sparse_error = e.sparse_relative;
    row.lowrank_error = e.lowrank_relative;
    row.success = e.sparse_relative <= o.threshold && e.lowrank_relative <= o.threshold;
  } catch (const std::exception&) {
    row.success = false;
  }
  return row;
}

}  // namespace

int cmd_sweep(const SweepOptions& o, std::ostream& err) {
  return guarded(err, [&]() -> int {
    if (o.m == 0 || o.n == 0) throw ParameterError("sweep: --m and --n must be positive");
    if (o.ranks.empty() || o.densities.empty()) throw ParameterError("sweep: rank and density lists must be nonempty");
    if (o.trials < 1) throw ParameterError("sweep: --trials must be at least 1");
    if (o.threads < 1) throw ParameterError("sweep: --threads must be at least 1");
    if (o.solver != "constrained" && o.solver != "regularized") throw ParameterError("sweep: unknown solver " + o.solver);
    if (o.lambda_rule != "standard" && o.lambda_rule != "theory") {
      throw ParameterError("sweep: unknown lambda rule " + o.lambda_rule);
    }
    for (std::size_t r : o.ranks) {
      if (r > std::min(o.m, o.n)) throw ParameterError("sweep: rank " + std::to_string(r) + " exceeds min(m, n)");
    }

    std::vector<SweepCell> cells;
    for (std::size_t r : o.ranks) {
      for (std::size_t d = 0; d < o.densities.size(); ++d) {
        for (int t = 0; t < o.trials; ++t) cells.push_back({r, d, t});
      }
    }
    std::vector<SweepRow> rows(cells.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i = next++; i < cells.size(); i = next++) rows[i] = run_cell(o, cells[i]);
    };
    const int nthreads = std::min<int>(o.threads, static_cast<int>(cells.size()));
    std::vector<std::thread> pool;
    for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
    worker();
    for (std::thread& t : pool) t.join();

    std::string trials = "rank,density,trial,seed,ktilde,support_size,alpha_beta,lambda,iterations,converged,"
                         "sparse_rel_error,lowrank_rel_error,success\n";
    std::string summary = "rank,density,trials,successes,success_rate\n";
    std::size_t i = 0;
    for (std::size_t r : o.ranks) {
      for (std::size_t d = 0; d < o.densities.size(); ++d) {
        int successes = 0;
        for (int t = 0; t < o.trials; ++t, ++i) {
          const SweepRow& row = rows[i];
          successes += row.success ? 1 : 0;
          trials += std::to_string(r) + "," + format_double(o.densities[d]) + "," + std::to_string(t) + "," +
                    std::to_string(row.seed) + "," + std::to_string(row.ktilde) + "," +
                    std::to_string(row.support_size) + "," + format_double(row.alpha_beta) + "," +
                    format_double(row.lambda) + "," + std::to_string(row.iterations) + "," +
                    (row.converged ? "1" : "0") + "," + format_double(row.sparse_error) + "," +
                    format_double(row.lowrank_error) + "," + (row.success ? "1" : "0") + "\n";
        }
        summary += std::to_string(r) + "," + format_double(o.densities[d]) + "," + std::to_string(o.trials) + "," +
                   std::to_string(successes) + "," +
                   format_double(static_cast<double>(successes) / static_cast<double>(o.trials)) + "\n";
      }
    }
    write_file_atomic(o.out, trials);
    std::filesystem::path summary_path = o.out;
    summary_path += ".summary.csv";
    write_file_atomic(summary_path, summary);
    return kOk;
  });
}

namespace {

double parse_bound(const std::string& text) {
  if (text == "inf" || text == "Inf" || text == "infinity") return kUnbounded;
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &pos);
  } catch (const std::exception&) {
    pos = std::string::npos;
  }
  if (pos != text.size() || !(v > 0.0)) throw ParameterError("--b must be a positive number or 'inf'");
  return v;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sparse plus low-rank matrix decomposition", "slr"};
  app.require_subcommand(1);

  DecomposeOptions dec;
  std::string b_text = "inf";
  std::string dec_input, dec_out_s, dec_out_l, dec_report, dec_true_s, dec_true_l;
  double dec_lambda = 0.0, dec_mu = 0.0, dec_tol = 0.0;
  auto* d = app.add_subcommand("decompose", "Solve the regularized or constrained program for Y");
  d->add_option("--input", dec_input, "Y as headerless CSV")->required();
  d->add_option("--mode", dec.mode, "regularized or constrained")
      ->check(CLI::IsMember({"regularized", "constrained"}));
  auto* d_lambda = d->add_option("--lambda", dec_lambda, "Weight on ||X_S||_v1 (default 1/sqrt(max(m,n)))");
  auto* d_mu = d->add_option("--mu", dec_mu, "Regularized mode: data-fit weight 1/(2 mu)");
  d->add_option("--eps-v1", dec.eps_v1, "Constrained mode: v1 residual budget");
  d->add_option("--eps-star", dec.eps_star, "Constrained mode: trace-norm residual budget");
  d->add_option("--b", b_text, "Box bound (number or inf)");
  auto* d_tol = d->add_option("--tol", dec_tol, "Stopping tolerance");
  d->add_option("--max-iter", dec.max_iter, "Iteration cap");
  d->add_option("--penalty", dec.penalty, "Constrained mode: ADMM penalty");
  d->add_flag("--adaptive-penalty", dec.adaptive_penalty, "Constrained mode: residual-balanced penalty");
  d->add_option("--out-sparse", dec_out_s, "Output CSV for X_S")->required();
  d->add_option("--out-lowrank", dec_out_l, "Output CSV for X_L")->required();
  d->add_option("--report", dec_report, "Output JSON report")->required();
  auto* d_ts = d->add_option("--true-sparse", dec_true_s, "Known X_S, adds recovery errors to the report");
  auto* d_tl = d->add_option("--true-lowrank", dec_true_l, "Known X_L, adds recovery errors to the report");

  DiagnoseOptions dia;
  std::string dia_s, dia_l, dia_report;
  double dia_rho = 0.0, dia_lambda = 0.0, dia_mu = 0.0;
  auto* g = app.add_subcommand("diagnose", "Incoherence profile and recovery conditions of a target pair");
  g->add_option("--sparse", dia_s, "X_S as CSV")->required();
  g->add_option("--lowrank", dia_l, "X_L as CSV")->required();
  auto* g_rho = g->add_option("--rho", dia_rho, "Evaluate at this rho instead of rho*");
  g->add_option("--c", dia.c, "Condition constant c > 1");
  auto* g_lambda = g->add_option("--lambda", dia_lambda, "lambda to test (default derived)");
  auto* g_mu = g->add_option("--mu", dia_mu, "mu to test for the regularized formulation (default 1)");
  g->add_option("--report", dia_report, "Output JSON report")->required();

  CertifyOptions cer;
  std::string cer_s, cer_l, cer_noise, cer_report;
  auto* c = app.add_subcommand("certify", "Build and check the dual certificate of a target pair");
  c->add_option("--sparse", cer_s, "X_S as CSV")->required();
  c->add_option("--lowrank", cer_l, "X_L as CSV")->required();
  auto* c_noise = c->add_option("--noise", cer_noise, "Perturbation E as CSV (default 0)");
  c->add_option("--lambda", cer.lambda, "lambda")->required();
  c->add_option("--mu", cer.mu, "mu")->required();
  c->add_option("--c", cer.c, "c > 1")->required();
  c->add_option("--tol", cer.tol, "Neumann tolerance");
  c->add_option("--report", cer_report, "Output JSON report")->required();

  GenerateOptions gen;
  std::uint64_t gen_seed = 0;
  std::string magnitude = "fixed", subspaces = "gaussian", support = "uniform";
  auto* n = app.add_subcommand("generate", "Draw a synthetic instance");
  n->add_option("--m", gen.spec.m, "Rows")->required();
  n->add_option("--n", gen.spec.n, "Columns")->required();
  n->add_option("--rank", gen.spec.rank, "Rank of X_L")->required();
  n->add_option("--ktilde", gen.spec.ktilde, "Support draws")->required();
  n->add_option("--sigma", gen.spec.sigma, "Noise standard deviation");
  n->add_option("--seed", gen_seed, "Seed")->required();
  n->add_option("--amplitude", gen.spec.amplitude, "Sparse magnitude A");
  n->add_option("--magnitude", magnitude, "fixed (+-A) or uniform (sign * U[0.1A, A])")
      ->check(CLI::IsMember({"fixed", "uniform"}));
  n->add_option("--subspaces", subspaces, "gaussian or flat")->check(CLI::IsMember({"gaussian", "flat"}));
  n->add_option("--support", support, "uniform or permutation")->check(CLI::IsMember({"uniform", "permutation"}));
  n->add_option("--out-prefix", gen.out_prefix, "Output path prefix")->required();

  SweepOptions sw;
  std::string ranks_text, densities_text, sweep_out;
  auto* s = app.add_subcommand("sweep", "Recovery success over a rank x density grid");
  s->add_option("--m", sw.m, "Rows")->required();
  s->add_option("--n", sw.n, "Columns")->required();
  s->add_option("--ranks", ranks_text, "a:b")->required();
  s->add_option("--densities", densities_text, "lo:hi:step (fractions of mn)")->required();
  s->add_option("--trials", sw.trials, "Trials per cell")->required();
  s->add_option("--seed", sw.seed, "Base seed")->required();
  s->add_option("--out", sweep_out, "Trials CSV; the summary goes to <out>.summary.csv")->required();
  s->add_option("--threads", sw.threads, "Worker threads");
  s->add_option("--solver", sw.solver, "constrained or regularized")
      ->check(CLI::IsMember({"constrained", "regularized"}));
  s->add_option("--lambda-rule", sw.lambda_rule, "standard or theory")->check(CLI::IsMember({"standard", "theory"}));
  s->add_option("--mu", sw.mu, "mu for the regularized solver");
  s->add_option("--threshold", sw.threshold, "Relative Frobenius error counted as success");
  s->add_option("--tol", sw.tol, "Solver tolerance");
  s->add_option("--max-iter", sw.max_iter, "Solver iteration cap");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kIoError;
  }

  if (d->parsed()) {
    return guarded(err, [&] {
      dec.input = dec_input;
      if (*d_lambda) dec.lambda = dec_lambda;
      if (*d_mu) dec.mu = dec_mu;
      if (*d_tol) dec.tol = dec_tol;
      dec.b = parse_bound(b_text);
      dec.out_sparse = dec_out_s;
      dec.out_lowrank = dec_out_l;
      dec.report = dec_report;
      if (*d_ts) dec.true_sparse = dec_true_s;
      if (*d_tl) dec.true_lowrank = dec_true_l;
      return cmd_decompose(dec, err);
    });
  }
  if (g->parsed()) {
    dia.sparse = dia_s;
    dia.lowrank = dia_l;
    if (*g_rho) dia.rho = dia_rho;
    if (*g_lambda) dia.lambda = dia_lambda;
    if (*g_mu) dia.mu = dia_mu;
    dia.report = dia_report;
    return cmd_diagnose(dia, err);
  }
  if (c->parsed()) {
    cer.sparse = cer_s;
    cer.lowrank = cer_l;
    if (*c_noise) cer.noise = cer_noise;
    cer.report = cer_report;
    return cmd_certify(cer, err);
  }
  if (n->parsed()) {
    gen.spec.seed = Seed{gen_seed};
    gen.spec.magnitude = magnitude == "fixed" ? MagnitudeLaw::fixed_sign : MagnitudeLaw::uniform_dead_zone;
    gen.spec.subspaces = subspaces == "gaussian" ? SubspaceLaw::gaussian : SubspaceLaw::sign_flat;
    gen.spec.support = support == "uniform" ? SupportLaw::uniform_draws : SupportLaw::permutations;
    return cmd_generate(gen, err);
  }
  return guarded(err, [&] {
    sw.ranks = parse_rank_range(ranks_text);
    sw.densities = parse_density_range(densities_text);
    sw.out = sweep_out;
    return cmd_sweep(sw, err);
  });
}

}  // namespace slr::cli
