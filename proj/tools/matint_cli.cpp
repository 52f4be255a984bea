// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// matint command line: gen, solve, verify, bench.
// Exit codes: 0 success or PASS, 1 FAIL or internal error, 2 input error.

#include <cstdint>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "matint/errors.hpp"
#include "matint/harness/bench.hpp"
#include "matint/harness/generators.hpp"
#include "matint/harness/instance.hpp"
#include "matint/harness/report.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    matint::write_file(path, text);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"matint: matroid intersection toolkit"};
  app.require_subcommand(1);

  matint::GenSpec gen;
  std::string gen_out;
  auto* gen_cmd = app.add_subcommand("gen", "Generate an instance");
  gen_cmd->add_option("--type", gen.type, "bipartite, graphic_vs_partition, linear_pair, "
                                          "uniform_pair or partition_pair")
      ->capture_default_str();
  gen_cmd->add_option("--nl", gen.nl, "left vertices (bipartite)")->capture_default_str();
  gen_cmd->add_option("--nr", gen.nr, "right vertices (bipartite)")->capture_default_str();
  gen_cmd->add_option("--edge-prob", gen.edge_prob, "edge probability (bipartite)")
      ->capture_default_str();
  gen_cmd->add_option("--nv", gen.nv, "vertices (graphic_vs_partition)")->capture_default_str();
  gen_cmd->add_option("--blocks", gen.blocks, "partition blocks (graphic_vs_partition)")
      ->capture_default_str();
  gen_cmd->add_option("--edges", gen.edges, "edges, 0 for 2 nv (graphic_vs_partition)")
      ->capture_default_str();
  gen_cmd->add_option("--p", gen.p, "prime field (linear_pair)")->capture_default_str();
  gen_cmd->add_option("--rank", gen.rank, "rows (linear_pair)")->capture_default_str();
  gen_cmd->add_option("--n", gen.n, "ground set size")->capture_default_str();
  gen_cmd->add_option("--k1", gen.k1, "first rank (uniform_pair)")->capture_default_str();
  gen_cmd->add_option("--k2", gen.k2, "second rank (uniform_pair)")->capture_default_str();
  gen_cmd->add_option("--r", gen.r, "blocks per side (partition_pair)")->capture_default_str();
  gen_cmd->add_option("--max-weight", gen.max_weight, "attach weights in [0, W] when W > 0")
      ->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed, "generator seed")->capture_default_str();
  gen_cmd->add_option("--out", gen_out, "output file, stdout when omitted");

  matint::SolveConfig solve;
  std::string solve_oracle = "independence";
  std::string solve_delta = "auto";
  std::string solve_in;
  std::string solve_out;
  auto* solve_cmd = app.add_subcommand("solve", "Solve an instance and write a report");
  solve_cmd->add_option("--alg", solve.alg, "algorithm")
      ->check(CLI::IsMember(matint::algorithm_names()))
      ->capture_default_str();
  solve_cmd->add_option("--oracle", solve_oracle, "independence or rank")
      ->check(CLI::IsMember({"independence", "rank"}))
      ->capture_default_str();
  solve_cmd->add_option("--eps", solve.eps, "accuracy parameter in (0, 1)")
      ->capture_default_str();
  solve_cmd->add_option("--delta", solve_delta, "auction delta, an integer or auto")
      ->capture_default_str();
  solve_cmd->add_option("--seed", solve.seed, "seed for randomized algorithms")
      ->capture_default_str();
  solve_cmd->add_option("--c1", solve.c1, "mwu sample constant")->capture_default_str();
  solve_cmd->add_option("--c2", solve.c2, "mwu iteration constant")->capture_default_str();
  solve_cmd->add_flag("--parallel", solve.parallel, "count adaptive rounds");
  solve_cmd->add_option("instance", solve_in, "instance JSON")->required();
  solve_cmd->add_option("--out", solve_out, "report file, stdout when omitted");

  std::string verify_in;
  std::string verify_report_path;
  auto* verify_cmd = app.add_subcommand("verify", "Check a report against its instance");
  verify_cmd->add_option("instance", verify_in, "instance JSON")->required();
  verify_cmd->add_option("report", verify_report_path, "report JSON")->required();

  matint::BenchGrid grid;
  std::vector<std::uint64_t> bench_seeds{0};
  std::string bench_oracle = "independence";
  std::string bench_out;
  auto* bench_cmd = app.add_subcommand("bench", "Sweep partition_pair instances, emit CSV");
  bench_cmd->add_option("--algs", grid.algs, "algorithms")
      ->delimiter(',')
      ->check(CLI::IsMember(matint::algorithm_names()));
  bench_cmd->add_option("--n", grid.ns, "ground set sizes")->delimiter(',');
  bench_cmd->add_option("--r", grid.rs, "blocks per side")->delimiter(',');
  bench_cmd->add_option("--eps", grid.eps, "accuracy values")->delimiter(',');
  bench_cmd->add_option("--seeds", bench_seeds, "instance seeds")->delimiter(',');
  bench_cmd->add_option("--oracle", bench_oracle, "independence or rank")
      ->check(CLI::IsMember({"independence", "rank"}));
  bench_cmd->add_option("--max-weight", grid.max_weight, "attach weights in [0, W]");
  bench_cmd->add_option("--out", bench_out, "CSV file, stdout when omitted");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitInput;
  }

  try {
    if (*gen_cmd) {
      emit(gen_out, matint::instance_to_json(matint::generate(gen)).dump(2) + "\n");
      return kExitPass;
    }
    if (*solve_cmd) {
      solve.oracle = matint::parse_oracle(solve_oracle);
      if (solve_delta != "auto") {
        std::size_t used = 0;
        long long d = 0;
        try {
          d = std::stoll(solve_delta, &used);
        } catch (const std::exception&) {
          used = 0;
        }
        if (used != solve_delta.size()) {
          throw matint::InputError("--delta must be an integer or auto");
        }
        solve.delta = d;
      }
      const matint::Instance inst = matint::load_instance(solve_in);
      emit(solve_out, matint::solve(inst, solve).dump(2) + "\n");
      return kExitPass;
    }
    if (*verify_cmd) {
      const matint::Instance inst = matint::load_instance(verify_in);
      const matint::json report = matint::parse_json_text(
          matint::read_file(verify_report_path), verify_report_path);
      const matint::Verdict v = matint::verify_report(inst, report);
      std::cout << matint::verdict_json(v).dump(2) << "\n";
      return v.pass ? kExitPass : kExitFail;
    }
    if (*bench_cmd) {
      grid.oracle = matint::parse_oracle(bench_oracle);
      grid.seeds = bench_seeds;
      emit(bench_out, matint::bench_csv(matint::run_bench(grid)));
      return kExitPass;
    }
  } catch (const matint::SchemaError& e) {
    std::cerr << "schema error at " << e.what() << "\n";
    return kExitInput;
  } catch (const matint::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitInput;
}
