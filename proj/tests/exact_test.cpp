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

#include <algorithm>
#include <cstdint>
#include <vector>

#include <gtest/gtest.h>

#include "matint/auction.hpp"
#include "matint/exact.hpp"
#include "matint/families.hpp"
#include "matint/ledger.hpp"
#include "matint/wrappers.hpp"
#include "support/reference.hpp"

namespace matint {
namespace {

using reftest::Rng;

reftest::Set as_ref(const ElementSet& s) { return reftest::Set(s.begin(), s.end()); }

int cert_value(const reftest::Twin& a, const reftest::Twin& b, const DualCertificate& c) {
  return reftest::brute_rank(a.ref, as_ref(c.a)) + reftest::brute_rank(b.ref, as_ref(c.b));
}

TEST(ExchangeGraph, EmptySetHasOnlyTerminalArcs) {
  // M1 has element 1 as a loop, M2 has element 2 as a loop.
  const auto m1 = make_partition({{0, 2}, {1}}, {1, 0});
  const auto m2 = make_partition({{0, 1}, {2}}, {1, 0});
  QueryLedger ledger(LedgerMode::kParallelSim);
  const auto g = build_exchange_graph(*m1, *m2, {}, ledger);
  EXPECT_EQ(g.out[static_cast<std::size_t>(g.source())], (std::vector<std::int32_t>{0, 2}));
  EXPECT_TRUE(g.has_arc(0, g.sink()));
  EXPECT_TRUE(g.has_arc(1, g.sink()));
  EXPECT_FALSE(g.has_arc(2, g.sink()));
  EXPECT_EQ(g.arc_count(), 4);
  EXPECT_EQ(ledger.rounds(), 1);
  EXPECT_EQ(ledger.independence_queries(), 2 * 3);
}

TEST(ExchangeGraph, TwoByTwoPathIffPerfectMatching) {
  // Edges (0,0), (0,1), (1,0): S = {(0,0)} extends to {(0,1), (1,0)}.
  const auto full = reftest::bipartite_pair(2, 2, {{0, 0}, {0, 1}, {1, 0}});
  QueryLedger ledger;
  auto g = build_exchange_graph(*full.left.m, *full.right.m, {0}, ledger);
  EXPECT_TRUE(shortest_path(g, distances_to_sink(g)).has_value());
  EXPECT_EQ(reftest::brute_common(full.left.ref, full.right.ref).size, 2);

  // Edges (0,0), (1,0): no 2-matching, so no path.
  const auto star = reftest::bipartite_pair(2, 2, {{0, 0}, {1, 0}});
  g = build_exchange_graph(*star.left.m, *star.right.m, {0}, ledger);
  EXPECT_FALSE(shortest_path(g, distances_to_sink(g)).has_value());
  EXPECT_EQ(reftest::brute_common(star.left.ref, star.right.ref).size, 1);
}

TEST(ExchangeGraph, BatchSizeMatchesFormula) {
  const auto m = make_uniform(20, 10);
  const ElementSet s{1, 4, 7, 9, 12};
  for (QueryKind kind : {QueryKind::kIndependence, QueryKind::kRank}) {
    QueryLedger ledger(LedgerMode::kParallelSim);
    build_exchange_graph(*m, *m, s, ledger, kind);
    EXPECT_EQ(ledger.total_queries(), 2 * (20 - 5) * (5 + 1));
    EXPECT_EQ(ledger.rounds(), 1);
  }
}

TEST(ExchangeGraph, RejectsNonCommonIndependentSet) {
  const auto m1 = make_uniform(4, 1);
  const auto m2 = make_uniform(4, 4);
  QueryLedger ledger;
  EXPECT_THROW(build_exchange_graph(*m1, *m2, {0, 1}, ledger), InputError);
  EXPECT_THROW(build_exchange_graph(*m1, *m2, {7}, ledger), InputError);
  EXPECT_THROW(build_exchange_graph(*m1, *make_uniform(3, 1), {}, ledger), InputError);
}

TEST(ExchangeGraph, RankAndIndependenceGraphsAgree) {
  Rng rng(51);
  for (int round = 0; round < 100; ++round) {
    const int n = reftest::uniform_int(rng, 0, 12);
    const auto a = reftest::random_twin(rng, n);
    const auto b = reftest::random_twin(rng, n);
    QueryLedger ledger;
    const auto s = greedy_maximal_common(*a.m, *b.m, ledger);
    const auto gi = build_exchange_graph(*a.m, *b.m, s, ledger, QueryKind::kIndependence);
    const auto gr = build_exchange_graph(*a.m, *b.m, s, ledger, QueryKind::kRank);
    ASSERT_EQ(gi.out, gr.out);
  }
}

TEST(Augment, FromEmptyPicksSmallestFeasibleElement) {
  const auto m1 = make_partition({{0}, {1, 2}}, {0, 1});
  const auto m2 = make_uniform(3, 2);
  QueryLedger ledger;
  const auto out = augment(*m1, *m2, {}, ledger);
  ASSERT_TRUE(out.next.has_value());
  EXPECT_EQ(*out.next, (ElementSet{1}));
}

TEST(Augment, MaximumSetReportsMaximum) {
  const auto g = reftest::bipartite_pair(2, 2, {{0, 0}, {1, 0}});
  QueryLedger ledger;
  const auto out = augment(*g.left.m, *g.right.m, {1}, ledger);
  EXPECT_FALSE(out.next.has_value());
  EXPECT_EQ(cert_value(g.left, g.right, out.certificate), 1);
}

TEST(Augment, RepeatedFromEmptyReachesPerfectMatching) {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < 3; ++u) {
    for (int v = 0; v < 3; ++v) edges.push_back({u, v});
  }
  const auto g = reftest::bipartite_pair(3, 3, edges);
  QueryLedger ledger;
  const auto res = augment_to_maximum(*g.left.m, *g.right.m, {}, ledger);
  EXPECT_EQ(res.solution.size(), 3u);
  EXPECT_EQ(res.augmentations, 3);
}

TEST(ExactSequential, IdenticalMatroidsGiveRank) {
  const auto m = make_graphic(5, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {0, 3}, {1, 4}});
  QueryLedger ledger;
  EXPECT_EQ(static_cast<std::int64_t>(exact_sequential(*m, *m, ledger).solution.size()),
            m->full_rank());
}

TEST(ExactSequential, UniformCapBinds) {
  const auto k4 = make_graphic(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  QueryLedger ledger;
  EXPECT_EQ(exact_sequential(*k4, *make_uniform(6, 2), ledger).solution.size(), 2u);
}

TEST(ExactProperties, SequentialMatchesBruteForceWithTightCertificate) {
  Rng rng(52);
  for (int round = 0; round < 400; ++round) {
    const int n = reftest::uniform_int(rng, 0, 12);
    const auto a = reftest::random_twin(rng, n);
    const auto b = reftest::random_twin(rng, n);
    const int r = reftest::brute_common(a.ref, b.ref).size;
    QueryLedger ledger;
    const auto res = exact_sequential(*a.m, *b.m, ledger);
    ASSERT_EQ(static_cast<int>(res.solution.size()), r);
    ASSERT_TRUE(a.ref.indep(as_ref(res.solution)) && b.ref.indep(as_ref(res.solution)));
    ASSERT_EQ(set_union(res.dual.a, res.dual.b), full_set(n));
    ASSERT_EQ(cert_value(a, b, res.dual), r);
  }
}

// Every augmentation from the empty set on reaches the optimum with no dead
// end, one element at a time.
TEST(ExactProperties, AugmentFromEmptyReachesOptimum) {
  Rng rng(53);
  for (int round = 0; round < 200; ++round) {
    const int n = reftest::uniform_int(rng, 0, 12);
    const auto a = reftest::random_twin(rng, n);
    const auto b = reftest::random_twin(rng, n);
    QueryLedger ledger;
    const auto res = augment_to_maximum(*a.m, *b.m, {}, ledger);
    ASSERT_EQ(res.augmentations, reftest::brute_common(a.ref, b.ref).size);
  }
}

TEST(ExactParallel, ParametersAtReferencePoint) {
  const auto p = exact_parallel_params(512, 64, QueryKind::kRank);
  EXPECT_DOUBLE_EQ(p.eps, 0.5);
  EXPECT_EQ(p.delta, 32);
  const auto q = exact_parallel_params(512, 64, QueryKind::kIndependence);
  EXPECT_DOUBLE_EQ(q.eps, 0.5);  // 8 / 8 = 1, capped
  EXPECT_EQ(q.delta, 64);
  const auto z = exact_parallel_params(10, 0, QueryKind::kRank);
  EXPECT_DOUBLE_EQ(z.eps, 0.5);
  EXPECT_EQ(z.delta, 1);
}

TEST(ExactParallel, NeedsParallelLedger) {
  const auto m = make_uniform(3, 1);
  QueryLedger ledger;
  EXPECT_THROW(exact_parallel(*m, *m, QueryKind::kRank, ledger), InputError);
}

TEST(ExactProperties, ParallelMatchesBruteForce) {
  Rng rng(54);
  for (int round = 0; round < 120; ++round) {
    const int n = reftest::uniform_int(rng, 0, 10);
    const auto a = reftest::random_twin(rng, n);
    const auto b = reftest::random_twin(rng, n);
    const int r = reftest::brute_common(a.ref, b.ref).size;
    for (QueryKind kind : {QueryKind::kRank, QueryKind::kIndependence}) {
      QueryLedger ledger(LedgerMode::kParallelSim);
      const auto res = exact_parallel(*a.m, *b.m, kind, ledger);
      ASSERT_EQ(static_cast<int>(res.solution.size()), r);
      ASSERT_TRUE(a.ref.indep(as_ref(res.solution)) && b.ref.indep(as_ref(res.solution)));
      ASSERT_EQ(cert_value(a, b, res.dual), r);
      ASSERT_EQ(res.fiber_sizes.size(), static_cast<std::size_t>(n + 1));
      for (int k = 0; k <= n; ++k) {
        const auto got = res.fiber_sizes[static_cast<std::size_t>(k)];
        if (k <= 2 * r || got >= 0) {
          ASSERT_EQ(got, std::min(k, r));
        }
      }
      if (kind == QueryKind::kRank) {
        ASSERT_EQ(ledger.independence_queries(), 0);
      } else {
        ASSERT_EQ(ledger.rank_queries(), 0);
      }
    }
  }
}

TEST(ExactProperties, ParallelMatchesSequentialOnLargerInstances) {
  Rng rng(55);
  for (int round = 0; round < 12; ++round) {
    const int side = reftest::uniform_int(rng, 3, 8);
    const auto g = reftest::random_bipartite(rng, side, side, 0.3);
    QueryLedger seq;
    const auto want = exact_sequential(*g.left.m, *g.right.m, seq).solution.size();
    ASSERT_EQ(static_cast<int>(want), reftest::max_matching(g));
    for (QueryKind kind : {QueryKind::kRank, QueryKind::kIndependence}) {
      QueryLedger par(LedgerMode::kParallelSim);
      ASSERT_EQ(exact_parallel(*g.left.m, *g.right.m, kind, par).solution.size(), want);
    }
  }
}

// One execution's rounds: the initial basis pair, one per auction
// iteration, and one per exchange graph.
TEST(ExactProperties, RankPipelineRoundAccounting) {
  Rng rng(56);
  for (int round = 0; round < 40; ++round) {
    const auto g = reftest::random_bipartite(rng, 6, 6, 0.4);
    const int n = static_cast<int>(g.edges.size());
    const int r = reftest::max_matching(g);
    if (n == 0 || r == n) continue;
    QueryLedger ledger(LedgerMode::kParallelSim);
    AuctionOptions options;
    options.finder = BasisFinder::kParallelRank;
    const auto params = exact_parallel_params(n, r, QueryKind::kRank);
    const auto st = run_auction(*g.left.m, *g.right.m, params, options, ledger);
    const auto res =
        augment_to_maximum(*g.left.m, *g.right.m, st.solution(), ledger, QueryKind::kRank);
    ASSERT_EQ(ledger.rounds(), st.iterations + 1 + res.augmentations + 1);
    ASSERT_LE(static_cast<double>(res.augmentations),
              params.eps * r + static_cast<double>(params.delta));
  }
}

TEST(AdditiveApprox, GraphicVersusPartitionAgainstExact) {
  Rng rng(57);
  for (int round = 0; round < 5; ++round) {
    const auto a = reftest::random_graphic(rng, 100);
    const auto b = reftest::random_partition(rng, 100);
    QueryLedger ex;
    const auto r = static_cast<double>(exact_sequential(*a.m, *b.m, ex).solution.size());
    QueryLedger ledger;
    const auto res = additive_approx(*a.m, *b.m, 0.2, ledger);
    ASSERT_GE(static_cast<double>(res.solution.size()), r - 0.2 * 100);
  }
}

}  // namespace
}  // namespace matint
