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

#ifndef MATINT_HARNESS_BENCH_HPP_
#define MATINT_HARNESS_BENCH_HPP_

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "matint/exact.hpp"
#include "matint/harness/generators.hpp"
#include "matint/harness/instance.hpp"
#include "matint/harness/report.hpp"
#include "matint/ledger.hpp"

namespace matint {

// Every (alg, n, r, eps, seed) combination runs on partition_pair(n, r)
// with the given seed.
struct BenchGrid {
  std::vector<std::string> algs{"auction-additive"};
  std::vector<std::int64_t> ns{64};
  std::vector<std::int64_t> rs{8};
  std::vector<double> eps{0.25};
  std::vector<std::uint64_t> seeds{0};
  QueryKind oracle = QueryKind::kIndependence;
  std::int64_t max_weight = 0;
};

struct BenchRow {
  std::string alg;
  std::int64_t n = 0;
  std::int64_t r = 0;
  double eps = 0.0;
  std::int64_t queries_ind = 0;
  std::int64_t queries_rank = 0;
  std::int64_t rounds = 0;
  std::int64_t size = 0;
  std::int64_t opt_size = 0;
  double wall_ms = 0.0;
};

inline constexpr const char* kBenchHeader =
    "alg,n,r,eps,queries_ind,queries_rank,rounds,size,opt_size,wall_ms";

inline std::size_t grid_size(const BenchGrid& g) {
  return g.algs.size() * g.ns.size() * g.rs.size() * g.eps.size() * g.seeds.size();
}

inline std::vector<BenchRow> run_bench(const BenchGrid& g) {
  std::vector<BenchRow> rows;
  rows.reserve(grid_size(g));
  for (std::int64_t n : g.ns) {
    for (std::int64_t r : g.rs) {
      for (std::uint64_t seed : g.seeds) {
        GenSpec spec;
        spec.type = "partition_pair";
        spec.n = n;
        spec.r = r;
        spec.seed = seed;
        spec.max_weight = g.max_weight;
        const Instance inst = generate(spec);
        const BuiltInstance b = build_instance(inst);
        QueryLedger scratch;
        const auto opt =
            static_cast<std::int64_t>(exact_sequential(*b.m1, *b.m2, scratch).solution.size());
        for (const auto& alg : g.algs) {
          for (double eps : g.eps) {
            SolveConfig c;
            c.alg = alg;
            c.oracle = g.oracle;
            c.eps = eps;
            c.seed = seed;
            const json rep = solve(inst, c);
            BenchRow row;
            row.alg = alg;
            row.n = n;
            row.r = r;
            row.eps = eps;
            row.queries_ind = rep["counters"]["queries_ind"].get<std::int64_t>();
            row.queries_rank = rep["counters"]["queries_rank"].get<std::int64_t>();
            row.rounds = rep["counters"]["rounds"].get<std::int64_t>();
            row.size = rep["size"].get<std::int64_t>();
            row.opt_size = opt;
            row.wall_ms = rep["wall_ms"].get<double>();
            rows.push_back(std::move(row));
          }
        }
      }
    }
  }
  return rows;
}

inline std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::string out = std::string(kBenchHeader) + "\n";
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf), "%s,%lld,%lld,%g,%lld,%lld,%lld,%lld,%lld,%.3f\n",
                  r.alg.c_str(), static_cast<long long>(r.n), static_cast<long long>(r.r),
                  r.eps, static_cast<long long>(r.queries_ind),
                  static_cast<long long>(r.queries_rank), static_cast<long long>(r.rounds),
                  static_cast<long long>(r.size), static_cast<long long>(r.opt_size),
                  r.wall_ms);
    out += buf;
  }
  return out;
}

}  // namespace matint

#endif  // MATINT_HARNESS_BENCH_HPP_
