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

#include <cstdint>
#include <vector>

#include <gtest/gtest.h>

#include "matint/auction.hpp"
#include "matint/families.hpp"
#include "matint/ledger.hpp"
#include "matint/weighted.hpp"
#include "support/reference.hpp"

namespace matint {
namespace {

using reftest::Rng;

reftest::Set as_ref(const ElementSet& s) { return reftest::Set(s.begin(), s.end()); }

Weights random_weights(Rng& rng, int n, int hi) {
  Weights w(n);
  for (auto& x : w) x = reftest::uniform_int(rng, 0, hi);
  return w;
}

TEST(Weighted, TwoByTwoBipartite) {
  // Left 0 -> right {0: 5, 1: 1}; left 1 -> right {0: 1, 1: 4}.
  const auto g = reftest::bipartite_pair(2, 2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  const Weights w{5, 1, 1, 4};
  EXPECT_EQ(reftest::brute_common(g.left.ref, g.right.ref, w).weight, 9);
  QueryLedger ledger;
  const auto res = weighted_intersection(*g.left.m, *g.right.m, w,
                                         QueryKind::kIndependence, ledger);
  EXPECT_EQ(res.weight, 9);
  EXPECT_EQ(res.solution, (ElementSet{0, 3}));
  EXPECT_EQ(res.scales, weighted_scale_count(5, 2));
}

TEST(Weighted, EqualWeightsGiveMaximumCardinality) {
  const auto k4 = make_graphic(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  const auto part = make_partition({{0, 1}, {2, 3}, {4, 5}}, {1, 1, 1});
  QueryLedger ledger;
  const auto res = weighted_intersection(*k4, *part, Weights(6, 7),
                                         QueryKind::kIndependence, ledger);
  EXPECT_EQ(res.rank, 3);
  EXPECT_EQ(res.weight, 7 * 3);
}

TEST(Weighted, ScaleCount) {
  EXPECT_EQ(weighted_scale_count(16, 4), 9);
  EXPECT_EQ(weighted_scale_count(1, 0), 1);
  EXPECT_EQ(weighted_scale_count(0, 5), 0);
  EXPECT_EQ(weighted_scale_count(32, 7), 10);  // 32 * 15 = 480 -> 9, + 1
}

TEST(Weighted, ZeroWeightsSkipScaling) {
  const auto m = make_uniform(5, 2);
  QueryLedger ledger;
  const auto res = weighted_intersection(*m, *m, Weights(5, 0), QueryKind::kIndependence,
                                         ledger);
  EXPECT_EQ(res.scales, 0);
  EXPECT_EQ(res.weight, 0);
  EXPECT_EQ(res.solution.size(), 2u);
}

TEST(Weighted, RejectsBadInput) {
  const auto m = make_uniform(3, 1);
  QueryLedger ledger;
  EXPECT_THROW(weighted_intersection(*m, *m, {1, -1, 2}, QueryKind::kIndependence, ledger),
               InputError);
  EXPECT_THROW(weighted_intersection(*m, *m, {1, 2}, QueryKind::kIndependence, ledger),
               InputError);
  // A split that is not 2 zeta-approximate.
  const Weights w{4, 4, 4};
  const WeightSplit bad{{0, 0, 0}, {0, 0, 0}};
  EXPECT_THROW(run_weighted_auction(*m, *m, w, bad, {0}, 1, {0.5, 1}, {}, ledger),
               InputError);
}

TEST(WeightedAuction, ZeroWeightsReduceToUnitAuction) {
  Rng rng(61);
  for (int round = 0; round < 50; ++round) {
    const int n = reftest::uniform_int(rng, 0, 14);
    const auto a = reftest::random_twin(rng, n);
    const auto b = reftest::random_twin(rng, n);
    const AuctionParams params{0.25, 1};
    QueryLedger l1;
    QueryLedger l2;
    const auto plain = run_auction(*a.m, *b.m, params, {}, l1);
    const Weights zero(static_cast<std::size_t>(n), 0);
    const auto weighted = run_weighted_auction(*a.m, *b.m, zero, {zero, zero}, {}, 3, params,
                                               {}, l2);
    ASSERT_EQ(weighted.s1, plain.s1);
    ASSERT_EQ(weighted.s2, plain.s2);
    ASSERT_EQ(weighted.state.iterations, plain.iterations);
    for (int e = 0; e < n; ++e) {
      ASSERT_EQ(weighted.split.w1[e], 3 * plain.w1[e]);
      ASSERT_EQ(weighted.split.w2[e], 3 * plain.w2[e]);
    }
  }
}

TEST(WeightedAugment, SingleTightArc) {
  const auto m = make_uniform(2, 1);
  WeightSplit split{{0, 0}, {0, 0}};
  ElementSet s1{0};
  ElementSet s2{1};
  QueryLedger ledger(LedgerMode::kParallelSim);
  const auto info = weighted_augment_step(*m, *m, split, s1, s2, ledger);
  EXPECT_EQ(info.path, (std::vector<ElementId>{1, 0}));
  EXPECT_EQ(info.distance, 0);
  EXPECT_EQ(s1, (ElementSet{1}));
  EXPECT_EQ(s2, (ElementSet{1}));
  EXPECT_EQ(split.w1, (Weights{0, 0}));
  EXPECT_EQ(ledger.rounds(), 1);
  EXPECT_EQ(ledger.independence_queries(), 2);
}

TEST(WeightedAugment, AgreeingBasesAreRejected) {
  const auto m = make_uniform(2, 1);
  WeightSplit split{{0, 0}, {0, 0}};
  ElementSet s{0};
  ElementSet t{0};
  QueryLedger ledger;
  EXPECT_THROW(weighted_augment_step(*m, *m, split, s, t, ledger), InputError);
}

// Every split seen during a run is zeta-approximate, the floor(p/2)
// bookkeeping holds exactly, and S2 \ S1 carries no price.
struct SplitAudit {
  std::int64_t auction_checks = 0;
  std::int64_t split_checks = 0;
  bool ok = true;
  Weights wf;

  WeightedOptions options() {
    WeightedOptions o;
    o.auction.check_optimality = true;
    o.on_auction = [this](const AuctionState& st, const WeightSplit& prior, std::int64_t zeta) {
      ++auction_checks;
      for (std::size_t e = 0; e < st.w1.size(); ++e) {
        const std::int64_t sum = st.w1[e] + st.w2[e];
        if (!wf.empty() && (sum < wf[e] || sum > wf[e] + zeta)) ok = false;
        if ((prior.w1[e] - st.w1[e]) != (st.price[e] / 2) * zeta) ok = false;
      }
      for (ElementId e : set_difference(st.s2, st.s1)) {
        if (st.price[e] != 0) ok = false;
      }
    };
    o.on_split = [this](const WeightSplit& split, std::int64_t zeta) {
      ++split_checks;
      for (std::size_t e = 0; e < split.w1.size(); ++e) {
        const std::int64_t sum = split.w1[e] + split.w2[e];
        if (!wf.empty() && (sum < wf[e] || sum > wf[e] + zeta)) ok = false;
      }
    };
    return o;
  }
};

Weights fixed_point(const Weights& w, std::int64_t r, std::int64_t scales) {
  Weights out(w.size() + static_cast<std::size_t>(r), 0);
  for (std::size_t e = 0; e < w.size(); ++e) out[e] = w[e] << scales;
  return out;
}

TEST(WeightedProperties, SequentialMatchesBruteForce) {
  Rng rng(62);
  for (int round = 0; round < 300; ++round) {
    const int n = reftest::uniform_int(rng, 0, 11);
    const auto a = reftest::random_twin(rng, n);
    const auto b = reftest::random_twin(rng, n);
    const Weights w = random_weights(rng, n, reftest::uniform_int(rng, 0, 32));
    const auto want = reftest::brute_common(a.ref, b.ref, w);
    QueryLedger probe;
    const auto r = static_cast<std::int64_t>(exact_sequential(*a.m, *b.m, probe).solution.size());
    std::int64_t max_w = 0;
    for (auto x : w) max_w = std::max(max_w, x);
    SplitAudit audit;
    audit.wf = fixed_point(w, r, weighted_scale_count(max_w, r));
    QueryLedger ledger;
    const auto res = weighted_intersection(*a.m, *b.m, w, QueryKind::kIndependence, ledger,
                                           audit.options());
    ASSERT_EQ(res.weight, want.weight);
    ASSERT_TRUE(a.ref.indep(as_ref(res.solution)) && b.ref.indep(as_ref(res.solution)));
    ASSERT_EQ(res.scales, weighted_scale_count(max_w, want.size));
    ASSERT_EQ(static_cast<std::int64_t>(res.records.size()), res.scales);
    ASSERT_TRUE(audit.ok);
    if (res.scales > 0) {
      ASSERT_GT(audit.auction_checks, 0);
    }
  }
}

TEST(WeightedProperties, ParallelOraclesMatchBruteForce) {
  Rng rng(63);
  for (int round = 0; round < 40; ++round) {
    const int n = reftest::uniform_int(rng, 0, 8);
    const auto a = reftest::random_twin(rng, n);
    const auto b = reftest::random_twin(rng, n);
    const Weights w = random_weights(rng, n, 32);
    const auto want = reftest::brute_common(a.ref, b.ref, w);
    for (QueryKind kind : {QueryKind::kRank, QueryKind::kIndependence}) {
      QueryLedger ledger(LedgerMode::kParallelSim);
      const auto res = weighted_intersection(*a.m, *b.m, w, kind, ledger);
      ASSERT_EQ(res.weight, want.weight);
      if (kind == QueryKind::kRank) {
        ASSERT_EQ(ledger.independence_queries(), 0);
      } else {
        ASSERT_EQ(ledger.rank_queries(), 0);
      }
    }
  }
}

TEST(WeightedProperties, BipartiteAssignment) {
  Rng rng(64);
  for (int round = 0; round < 60; ++round) {
    const int side = reftest::uniform_int(rng, 1, 4);
    const auto g = reftest::random_bipartite(rng, side, side + 1, 0.6);
    const int n = static_cast<int>(g.edges.size());
    if (n > 14) continue;
    const Weights w = random_weights(rng, n, 20);
    QueryLedger ledger;
    const auto res = weighted_intersection(*g.left.m, *g.right.m, w,
                                           QueryKind::kIndependence, ledger);
    ASSERT_EQ(res.weight, reftest::brute_common(g.left.ref, g.right.ref, w).weight);
  }
}

// Augment steps per scale stay within the 3 eps r + delta budget.
TEST(WeightedProperties, AugmentStepsWithinBudget) {
  Rng rng(65);
  for (int round = 0; round < 60; ++round) {
    const int n = reftest::uniform_int(rng, 1, 12);
    const auto a = reftest::random_twin(rng, n);
    const auto b = reftest::random_twin(rng, n);
    const Weights w = random_weights(rng, n, 9);
    QueryLedger ledger;
    const auto res = weighted_intersection(*a.m, *b.m, w, QueryKind::kIndependence, ledger);
    const auto params = exact_parallel_params(n + res.rank, res.rank, QueryKind::kIndependence);
    for (const auto& rec : res.records) {
      ASSERT_LE(static_cast<double>(rec.augment_steps),
                3 * params.eps * static_cast<double>(res.rank) +
                    static_cast<double>(params.delta));
    }
  }
}

}  // namespace
}  // namespace matint
