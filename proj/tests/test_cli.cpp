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

#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <map>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "slr/cli.hpp"
#include "slr/csv_io.hpp"
#include "slr/norms.hpp"
#include "support.hpp"

using namespace slr;
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() /
           ("slr_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

struct Outcome {
  int code;
  std::string err;
};

Outcome run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, err.str()};
}

json load_json(const std::string& path) { return json::parse(read_file(path)); }

std::set<std::string> keys_of(const json& j) {
  std::set<std::string> k;
  for (auto it = j.begin(); it != j.end(); ++it) k.insert(it.key());
  return k;
}

// Sparse part at the last cell and a flat rank-one part on the rest.
void write_decoupled(const TempDir& dir, std::size_t m) {
  Matrix s(m, m);
  s(m - 1, m - 1) = 3.0;
  Matrix l(m, m);
  for (std::size_t i = 0; i + 1 < m; ++i) {
    for (std::size_t j = 0; j + 1 < m; ++j) l(i, j) = 0.5;
  }
  write_csv(dir / "dS.csv", s);
  write_csv(dir / "dL.csv", l);
}

int subprocess(const std::string& args) {
  const std::string cmd = std::string(SLR_CLI_BINARY) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::vector<std::string> generate_args(const TempDir& dir, const std::string& prefix, int seed, double sigma = 0.0) {
  return {"generate",  "--m",          "30",     "--n",       "30",          "--rank",
          "1",         "--ktilde",     "30",     "--sigma",   std::to_string(sigma),
          "--seed",    std::to_string(seed),     "--subspaces", "flat",     "--support",
          "permutation", "--out-prefix", dir / prefix};
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("range parsing") {
    CHECK(cli::parse_rank_range("1:3") == std::vector<std::size_t>{1, 2, 3});
    CHECK(cli::parse_rank_range("4") == std::vector<std::size_t>{4});
    CHECK_THROWS(cli::parse_rank_range("3:1"));
    CHECK_THROWS(cli::parse_rank_range("x"));
    const std::vector<double> d = cli::parse_density_range("0:0.1:0.05");
    REQUIRE(d.size() == 3);
    CHECK(d[0] == 0.0);
    CHECK(d[1] == doctest::Approx(0.05));
    CHECK(d[2] == doctest::Approx(0.1));
    CHECK(cli::parse_density_range("0.2") == std::vector<double>{0.2});
    CHECK_THROWS(cli::parse_density_range("0:2:0.5"));
    CHECK_THROWS(cli::parse_density_range("0:0.1:0"));
    CHECK(cli::sweep_cell_seed(7, 1, 0, 0) != cli::sweep_cell_seed(7, 1, 0, 1));
    CHECK(cli::sweep_cell_seed(7, 1, 0, 0) == cli::sweep_cell_seed(7, 1, 0, 0));
  }

  TEST_CASE("csv round trip is exact") {
    Rng rng(Seed{71});
    Matrix M = slr::test::random_matrix(9, 7, rng, 1e3);
    M(0, 0) = 1e-300;
    M(1, 1) = -0.1;
    M(2, 2) = 0.0;
    const Matrix back = parse_csv(format_csv(M));
    CHECK(std::memcmp(back.data(), M.data(), M.size() * sizeof(double)) == 0);
    CHECK_THROWS_AS(parse_csv("1,2\n3\n"), IoError);
    CHECK_THROWS_AS(parse_csv("1,nan\n"), IoError);
    CHECK_THROWS_AS(parse_csv(""), IoError);
  }

  TEST_CASE("decompose zero input") {
    TempDir dir;
    write_csv(dir / "Y.csv", Matrix(5, 4));
    const Outcome o = run_cli({"decompose", "--input", dir / "Y.csv", "--mode", "regularized", "--mu", "0.1",
                           "--out-sparse", dir / "S.csv", "--out-lowrank", dir / "L.csv", "--report", dir / "r.json"});
    CHECK(o.code == 0);
    CHECK(read_csv(dir / "S.csv") == Matrix(5, 4));
    CHECK(read_csv(dir / "L.csv") == Matrix(5, 4));
    const json r = load_json(dir / "r.json");
    CHECK(keys_of(r) == std::set<std::string>{"mode", "lambda", "mu_or_eps", "iterations", "converged", "objective",
                                              "residual_v1", "residual_star", "residual_v2", "wall_time_seconds"});
  }

  TEST_CASE("decompose round trip") {
    TempDir dir;
    REQUIRE(run_cli(generate_args(dir, "g", 3, 1e-3)).code == 0);
    const Outcome o = run_cli({"decompose", "--input", dir / "g_Y.csv", "--mu", "0.05", "--lambda", "0.2",
                           "--out-sparse", dir / "S.csv", "--out-lowrank", dir / "L.csv", "--report", dir / "r.json"});
    REQUIRE(o.code == 0);
    const Matrix Y = read_csv(dir / "g_Y.csv");
    const Matrix R = read_csv(dir / "S.csv") + read_csv(dir / "L.csv") - Y;
    const json r = load_json(dir / "r.json");
    CHECK(r["mode"] == "regularized");
    CHECK(r["mu_or_eps"].get<double>() == 0.05);
    CHECK(std::fabs(r["residual_v1"].get<double>() - norm_v1(R)) <= 1e-9);
    CHECK(std::fabs(r["residual_star"].get<double>() - trace_norm(R)) <= 1e-9);
    CHECK(std::fabs(r["residual_v2"].get<double>() - norm_v2(R)) <= 1e-9);
  }

  TEST_CASE("constrained decompose recovers a generated instance") {
    TempDir dir;
    REQUIRE(run_cli(generate_args(dir, "g", 5)).code == 0);
    const Outcome o =
        run_cli({"decompose", "--input", dir / "g_Y.csv", "--mode", "constrained", "--eps-v1", "0", "--eps-star", "0",
             "--out-sparse", dir / "S.csv", "--out-lowrank", dir / "L.csv", "--report", dir / "r.json",
             "--true-sparse", dir / "g_sparse.csv", "--true-lowrank", dir / "g_lowrank.csv"});
    REQUIRE(o.code == 0);
    const json r = load_json(dir / "r.json");
    CHECK(r["mu_or_eps"] == json::array({0.0, 0.0}));
    CHECK(r["sparse_relative_error"].get<double>() <= 1e-6);
    CHECK(r["lowrank_relative_error"].get<double>() <= 1e-6);
    const json p = load_json(dir / "g_profile.json");
    CHECK(p["alpha_beta"].get<double>() < 1.0);
    CHECK(p["identifiable"] == true);
  }

  TEST_CASE("decompose input errors") {
    TempDir dir;
    {
      std::ofstream(dir / "ragged.csv") << "1,2,3\n4,5\n";
      std::ofstream(dir / "nan.csv") << "1,2\nnan,4\n";
    }
    for (const char* name : {"ragged.csv", "nan.csv", "missing.csv"}) {
      const Outcome o = run_cli({"decompose", "--input", dir / name, "--mu", "1", "--out-sparse", dir / "S.csv",
                             "--out-lowrank", dir / "L.csv", "--report", dir / "r.json"});
      CHECK(o.code == 1);
      CHECK(!o.err.empty());
    }
    const Outcome ragged = run_cli({"decompose", "--input", dir / "ragged.csv", "--mu", "1", "--out-sparse",
                                dir / "S.csv", "--out-lowrank", dir / "L.csv", "--report", dir / "r.json"});
    CHECK(ragged.err.find(":2:") != std::string::npos);
    CHECK(!fs::exists(dir / "r.json"));
  }

  TEST_CASE("decompose reports non-convergence") {
    TempDir dir;
    REQUIRE(run_cli(generate_args(dir, "g", 6)).code == 0);
    const Outcome o = run_cli({"decompose", "--input", dir / "g_Y.csv", "--mode", "constrained", "--max-iter", "2",
                           "--out-sparse", dir / "S.csv", "--out-lowrank", dir / "L.csv", "--report", dir / "r.json"});
    CHECK(o.code == 2);
    CHECK(load_json(dir / "r.json")["converged"] == false);
  }

  TEST_CASE("diagnose") {
    TempDir dir;
    REQUIRE(run_cli(generate_args(dir, "g", 8)).code == 0);
    REQUIRE(run_cli({"diagnose", "--sparse", dir / "g_sparse.csv", "--lowrank", dir / "g_lowrank.csv", "--report",
                 dir / "d.json"})
                .code == 0);
    const json d = load_json(dir / "d.json");
    CHECK(d["identifiable"] == true);
    CHECK(d["alpha_beta"].get<double>() < 1.0);
    CHECK(d["constrained_passed"] == true);
    CHECK(d["regularized_passed"] == true);
    CHECK(d["constrained_lambda_min"].get<double>() <= d["constrained_lambda"].get<double>());
    CHECK(d["constrained_lambda"].get<double>() <= d["constrained_lambda_max"].get<double>());

    Rng rng(Seed{72});
    const Matrix X = slr::test::random_matrix(6, 6, rng);
    write_csv(dir / "X.csv", X);
    REQUIRE(run_cli({"diagnose", "--sparse", dir / "X.csv", "--lowrank", dir / "X.csv", "--report", dir / "x.json"})
                .code == 0);
    const json x = load_json(dir / "x.json");
    CHECK(x["alpha_beta"].get<double>() >= 1.0 - 1e-9);
    CHECK(x["identifiable"] == false);

    write_csv(dir / "Z.csv", Matrix(6, 6));
    REQUIRE(run_cli({"diagnose", "--sparse", dir / "Z.csv", "--lowrank", dir / "X.csv", "--report", dir / "z.json"})
                .code == 0);
    CHECK(load_json(dir / "z.json")["alpha_star"].get<double>() == 0.0);
  }

  TEST_CASE("certify") {
    TempDir dir;
    write_decoupled(dir, 17);
    const std::vector<std::string> base = {"certify", "--sparse", dir / "dS.csv", "--lowrank", dir / "dL.csv",
                                           "--mu",    "1",        "--c",         "2"};
    auto with = [&](std::vector<std::string> extra) {
      std::vector<std::string> a = base;
      a.insert(a.end(), extra.begin(), extra.end());
      return a;
    };
    const Outcome ok = run_cli(with({"--lambda", "0.3", "--report", dir / "c.json"}));
    CHECK(ok.code == 0);
    const json c = load_json(dir / "c.json");
    CHECK(c["all_satisfied"] == true);
    CHECK(c["residual_omega"].get<double>() <= 1e-9);
    CHECK(c["residual_T"].get<double>() <= 1e-9);
    CHECK(c["complement_vinf"].get<double>() <= c["complement_vinf_cap"].get<double>());
    for (const char* name : {"Q_omega_2to2", "Q_T_2to2", "Q_T_trace", "Q_T_vinf", "Q_omega_vinf", "Q_omega_v1",
                             "Q_sum_v2_squared"}) {
      const std::string n = name;
      CHECK(c[n + "_satisfied"] == true);
      CHECK(c[n + "_measured"].get<double>() <= c[n + "_bound"].get<double>() * (1 + 1e-8) + 1e-10);
    }

    const Outcome outside = run_cli(with({"--lambda", "5", "--report", dir / "o.json"}));
    CHECK(outside.code == 3);
    CHECK(outside.err.find("lambda") != std::string::npos);

    // A tiny perturbation moves the residuals continuously.
    Rng rng(Seed{73});
    Matrix E = slr::test::random_matrix(17, 17, rng);
    E *= 1e-8 / norm_v2(E);
    write_csv(dir / "E.csv", E);
    REQUIRE(run_cli(with({"--lambda", "0.3", "--noise", dir / "E.csv", "--report", dir / "e.json"})).code == 0);
    const json e = load_json(dir / "e.json");
    CHECK(std::fabs(e["residual_omega"].get<double>() - c["residual_omega"].get<double>()) <= 1e-6);
    CHECK(std::fabs(e["residual_T"].get<double>() - c["residual_T"].get<double>()) <= 1e-6);

    // Every 4 x 4 decoupled pair has alpha*beta >= 1 and is refused.
    Matrix s4(4, 4);
    s4(3, 3) = 1.0;
    write_csv(dir / "s4.csv", s4);
    write_csv(dir / "l4.csv", Matrix::diagonal({2, 1, 0, 0}));
    const Outcome small = run_cli({"certify", "--sparse", dir / "s4.csv", "--lowrank", dir / "l4.csv", "--lambda", "0.3",
                               "--mu", "1", "--c", "2", "--report", dir / "s.json"});
    CHECK(small.code == 3);
  }

  TEST_CASE("generate writes a consistent instance") {
    TempDir dir;
    REQUIRE(run_cli(generate_args(dir, "g", 9, 0.01)).code == 0);
    const Matrix Y = read_csv(dir / "g_Y.csv");
    const Matrix S = read_csv(dir / "g_sparse.csv");
    const Matrix L = read_csv(dir / "g_lowrank.csv");
    const Matrix E = read_csv(dir / "g_noise.csv");
    CHECK(Y == S + L + E);
    const json p = load_json(dir / "g_profile.json");
    CHECK(p["support_size"].get<std::size_t>() == SupportSet::of_nonzeros(S).size());
    CHECK(p["seed"].get<std::uint64_t>() == 9);
    CHECK(p["eps_2to2"].get<double>() == doctest::Approx(spectral_norm(E)).epsilon(1e-12));
  }

  TEST_CASE("sweep") {
    TempDir dir;
    auto sweep = [&](const std::string& out, int threads) {
      return run_cli({"sweep", "--m", "16", "--n", "16", "--ranks", "1:2", "--densities", "0:0.3:0.1", "--trials", "3",
                  "--seed", "42", "--threads", std::to_string(threads), "--out", dir / out});
    };
    REQUIRE(sweep("a.csv", 1).code == 0);
    REQUIRE(sweep("b.csv", 1).code == 0);
    REQUIRE(sweep("c.csv", 4).code == 0);
    const std::string a = read_file(dir / "a.csv");
    CHECK(a == read_file(dir / "b.csv"));
    CHECK(a == read_file(dir / "c.csv"));
    CHECK(read_file(dir / "a.csv.summary.csv") == read_file(dir / "c.csv.summary.csv"));

    // Summary rows: rank,density,trials,successes,success_rate.
    std::istringstream in(read_file(dir / "a.csv.summary.csv"));
    std::string line;
    std::getline(in, line);
    CHECK(line == "rank,density,trials,successes,success_rate");
    std::map<int, std::vector<std::pair<double, double>>> by_rank;
    while (std::getline(in, line)) {
      int rank = 0, trials = 0, successes = 0;
      double density = 0, rate = 0;
      REQUIRE(std::sscanf(line.c_str(), "%d,%lf,%d,%d,%lf", &rank, &density, &trials, &successes, &rate) == 5);
      by_rank[rank].push_back({density, rate});
    }
    REQUIRE(by_rank.size() == 2);
    for (const auto& [rank, column] : by_rank) {
      REQUIRE(column.size() == 4);
      CHECK(column[0].second == 1.0);
      int inversions = 0;
      for (std::size_t i = 1; i < column.size(); ++i) inversions += column[i].second > column[i - 1].second ? 1 : 0;
      CHECK(inversions <= 1);
    }
    CHECK(run_cli({"sweep", "--m", "16", "--n", "16", "--ranks", "1", "--densities", "0.1", "--trials", "0", "--seed",
               "1", "--out", dir / "z.csv"})
              .code == 1);
  }

  TEST_CASE("process exit codes") {
    TempDir dir;
    write_decoupled(dir, 17);
    CHECK(subprocess("--help") == 0);
    CHECK(subprocess("bogus") != 0);
    CHECK(subprocess("decompose --input " + (dir / "none.csv") + " --mu 1 --out-sparse " + (dir / "S.csv") +
                     " --out-lowrank " + (dir / "L.csv") + " --report " + (dir / "r.json")) == 1);
    CHECK(subprocess("certify --sparse " + (dir / "dS.csv") + " --lowrank " + (dir / "dL.csv") +
                     " --lambda 0.3 --mu 1 --c 2 --report " + (dir / "c.json")) == 0);
    CHECK(subprocess("certify --sparse " + (dir / "dS.csv") + " --lowrank " + (dir / "dL.csv") +
                     " --lambda 9 --mu 1 --c 2 --report " + (dir / "c.json")) == 3);
    REQUIRE(subprocess("generate --m 20 --n 20 --rank 1 --ktilde 20 --seed 1 --out-prefix " + (dir / "g")) == 0);
    CHECK(subprocess("decompose --input " + (dir / "g_Y.csv") + " --mode constrained --max-iter 1 --out-sparse " +
                     (dir / "S.csv") + " --out-lowrank " + (dir / "L.csv") + " --report " + (dir / "r.json")) == 2);
  }
}
