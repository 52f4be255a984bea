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

#ifndef MATINT_HARNESS_GENERATORS_HPP_
#define MATINT_HARNESS_GENERATORS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "matint/errors.hpp"
#include "matint/harness/instance.hpp"
#include "matint/random.hpp"

namespace matint {

// Generator parameters. Each type reads only its own fields:
//   bipartite             nl, nr, edge_prob
//   graphic_vs_partition  nv, blocks, edges (0 means 2 nv)
//   linear_pair           p, rank, n
//   uniform_pair          n, k1, k2
//   partition_pair        n, r
// max_weight > 0 attaches weights drawn uniformly from [0, max_weight].
struct GenSpec {
  std::string type = "bipartite";
  std::int64_t nl = 3;
  std::int64_t nr = 3;
  double edge_prob = 0.5;
  std::int64_t nv = 6;
  std::int64_t blocks = 3;
  std::int64_t edges = 0;
  std::int64_t p = 2;
  std::int64_t rank = 3;
  std::int64_t n = 8;
  std::int64_t k1 = 4;
  std::int64_t k2 = 4;
  std::int64_t r = 4;
  std::int64_t max_weight = 0;
  std::uint64_t seed = 0;
};

namespace detail {

inline std::int64_t draw(CounterRng& rng, std::int64_t bound) {
  return static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(bound));
}

inline void require(bool ok, const std::string& what) {
  if (!ok) throw InputError("gen: " + what);
}

inline json partition_json(const std::vector<std::vector<ElementId>>& blocks,
                           std::int64_t capacity) {
  return {{"type", "partition"},
          {"blocks", blocks},
          {"capacities", std::vector<std::int64_t>(blocks.size(), capacity)}};
}

// Elements are assigned to left and right blocks of capacity 1.
inline void block_pair(Instance& inst, const std::vector<std::int64_t>& left_of,
                       const std::vector<std::int64_t>& right_of, std::int64_t nl,
                       std::int64_t nr) {
  std::vector<std::vector<ElementId>> left(static_cast<std::size_t>(nl));
  std::vector<std::vector<ElementId>> right(static_cast<std::size_t>(nr));
  for (std::size_t e = 0; e < left_of.size(); ++e) {
    left[static_cast<std::size_t>(left_of[e])].push_back(static_cast<ElementId>(e));
    right[static_cast<std::size_t>(right_of[e])].push_back(static_cast<ElementId>(e));
  }
  inst.m1 = partition_json(left, 1);
  inst.m2 = partition_json(right, 1);
}

}  // namespace detail

inline Instance generate(const GenSpec& spec) {
  using detail::draw;
  using detail::require;
  CounterRng rng(spec.seed);
  Instance inst;
  inst.seed = spec.seed;
  json gen = {{"type", spec.type}};
  std::int64_t n = 0;

  if (spec.type == "bipartite") {
    require(spec.nl >= 1 && spec.nr >= 1, "nl and nr must be >= 1");
    require(spec.edge_prob >= 0.0 && spec.edge_prob <= 1.0, "edge_prob must lie in [0, 1]");
    std::vector<std::int64_t> left_of;
    std::vector<std::int64_t> right_of;
    for (std::int64_t u = 0; u < spec.nl; ++u) {
      for (std::int64_t v = 0; v < spec.nr; ++v) {
        if (rng.uniform() < spec.edge_prob) {
          left_of.push_back(u);
          right_of.push_back(v);
        }
      }
    }
    detail::block_pair(inst, left_of, right_of, spec.nl, spec.nr);
    n = static_cast<std::int64_t>(left_of.size());
    gen["nl"] = spec.nl;
    gen["nr"] = spec.nr;
    gen["edge_prob"] = spec.edge_prob;
  } else if (spec.type == "graphic_vs_partition") {
    require(spec.nv >= 2, "nv must be >= 2");
    require(spec.blocks >= 1, "blocks must be >= 1");
    require(spec.edges >= 0, "edges must be >= 0");
    n = spec.edges > 0 ? spec.edges : 2 * spec.nv;
    std::vector<std::vector<std::int64_t>> edge_list;
    std::vector<std::vector<ElementId>> parts(static_cast<std::size_t>(spec.blocks));
    for (std::int64_t e = 0; e < n; ++e) {
      const std::int64_t u = draw(rng, spec.nv);
      std::int64_t v = draw(rng, spec.nv - 1);
      if (v >= u) ++v;
      edge_list.push_back({u, v});
      parts[static_cast<std::size_t>(draw(rng, spec.blocks))].push_back(
          static_cast<ElementId>(e));
    }
    inst.m1 = {{"type", "graphic"}, {"num_vertices", spec.nv}, {"edges", edge_list}};
    inst.m2 = detail::partition_json(parts, 1);
    gen["nv"] = spec.nv;
    gen["blocks"] = spec.blocks;
    gen["edges"] = n;
  } else if (spec.type == "linear_pair") {
    require(spec.rank >= 1 && spec.n >= 0, "rank must be >= 1 and n >= 0");
    require(spec.p >= 2, "p must be a prime");
    n = spec.n;
    auto matrix = [&] {
      std::vector<std::vector<std::int64_t>> cols(static_cast<std::size_t>(n));
      for (auto& c : cols) {
        for (std::int64_t i = 0; i < spec.rank; ++i) c.push_back(draw(rng, spec.p));
      }
      return cols;
    };
    inst.m1 = {{"type", "linear"}, {"p", spec.p}, {"columns", matrix()}};
    inst.m2 = {{"type", "linear"}, {"p", spec.p}, {"columns", matrix()}};
    gen["p"] = spec.p;
    gen["rank"] = spec.rank;
    gen["n"] = n;
  } else if (spec.type == "uniform_pair") {
    require(spec.n >= 0 && spec.k1 >= 0 && spec.k2 >= 0, "n, k1, k2 must be >= 0");
    n = spec.n;
    inst.m1 = {{"type", "uniform"}, {"n", n}, {"k", spec.k1}};
    inst.m2 = {{"type", "uniform"}, {"n", n}, {"k", spec.k2}};
    gen["n"] = n;
    gen["k1"] = spec.k1;
    gen["k2"] = spec.k2;
  } else if (spec.type == "partition_pair") {
    require(spec.n >= 0 && spec.r >= 1, "n must be >= 0 and r >= 1");
    n = spec.n;
    std::vector<std::int64_t> left_of(static_cast<std::size_t>(n));
    std::vector<std::int64_t> right_of(static_cast<std::size_t>(n));
    for (std::int64_t e = 0; e < n; ++e) {
      left_of[static_cast<std::size_t>(e)] = draw(rng, spec.r);
      right_of[static_cast<std::size_t>(e)] = draw(rng, spec.r);
    }
    detail::block_pair(inst, left_of, right_of, spec.r, spec.r);
    gen["n"] = n;
    gen["r"] = spec.r;
  } else {
    throw InputError("gen: unknown instance type '" + spec.type + "'");
  }

  require(spec.max_weight >= 0, "max_weight must be >= 0");
  if (spec.max_weight > 0) {
    Weights w(static_cast<std::size_t>(n));
    for (auto& x : w) x = draw(rng, spec.max_weight + 1);
    inst.weights = std::move(w);
    gen["max_weight"] = spec.max_weight;
  }
  inst.generator = std::move(gen);
  return inst;
}

}  // namespace matint

#endif  // MATINT_HARNESS_GENERATORS_HPP_
