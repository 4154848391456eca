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
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "slr/prox.hpp"
#include "slr/synth.hpp"

namespace slr::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kIoError = 1,
  kNotConverged = 2,
  kPrecondition = 3,
};

struct DecomposeOptions {
  std::filesystem::path input;
  std::string mode = "regularized";
  std::optional<double> lambda;  // default 1/sqrt(max(m, n))
  std::optional<double> mu;      // required for the regularized mode
  double eps_v1 = 0.0;
  double eps_star = 0.0;
  double b = kUnbounded;
  std::optional<double> tol;  // default 1e-12 (regularized) or 1e-9 (constrained)
  int max_iter = 100000;
  double penalty = 1.0;
  bool adaptive_penalty = false;
  std::filesystem::path out_sparse;
  std::filesystem::path out_lowrank;
  std::filesystem::path report;
  std::optional<std::filesystem::path> true_sparse;
  std::optional<std::filesystem::path> true_lowrank;
};

struct DiagnoseOptions {
  std::filesystem::path sparse;
  std::filesystem::path lowrank;
  std::optional<double> rho;
  double c = 2.0;
  std::optional<double> lambda;
  std::optional<double> mu;
  std::filesystem::path report;
};

struct CertifyOptions {
  std::filesystem::path sparse;
  std::filesystem::path lowrank;
  std::optional<std::filesystem::path> noise;
  double lambda = 0.0;
  double mu = 1.0;
  double c = 2.0;
  double tol = 1e-12;
  std::filesystem::path report;
};

struct GenerateOptions {
  InstanceSpec spec;
  std::string out_prefix;
};

struct SweepOptions {
  std::size_t m = 0;
  std::size_t n = 0;
  std::vector<std::size_t> ranks;
  std::vector<double> densities;
  int trials = 1;
  std::uint64_t seed = 0;
  std::filesystem::path out;
  int threads = 1;
  std::string solver = "constrained";
  std::string lambda_rule = "standard";
  double mu = 1e-3;  // regularized solver only
  double threshold = 1e-4;
  double tol = 1e-7;
  int max_iter = 5000;
};

int cmd_decompose(const DecomposeOptions& opts, std::ostream& err);
int cmd_diagnose(const DiagnoseOptions& opts, std::ostream& err);
int cmd_certify(const CertifyOptions& opts, std::ostream& err);
int cmd_generate(const GenerateOptions& opts, std::ostream& err);
int cmd_sweep(const SweepOptions& opts, std::ostream& err);

/// "a:b" (inclusive) or "a".
std::vector<std::size_t> parse_rank_range(const std::string& text);
/// "lo:hi:step" (inclusive of hi up to rounding) or a single value.
std::vector<double> parse_density_range(const std::string& text);

/// Per-cell sweep seed: base XOR a mix of (rank, density index, trial).
std::uint64_t sweep_cell_seed(std::uint64_t base, std::size_t rank, std::size_t density_index, int trial);

/// Parses argv-style arguments (without the program name) and dispatches.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace slr::cli
