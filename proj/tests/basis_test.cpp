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

#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "matint/basis.hpp"
#include "matint/families.hpp"
#include "matint/ledger.hpp"
#include "support/reference.hpp"

namespace matint {
namespace {

using reftest::Rng;

MatroidHandle triangle() { return make_graphic(3, {{0, 1}, {1, 2}, {0, 2}}); }

MatroidHandle k4() {
  return make_graphic(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
}

// Max weight over all bases of the reference matroid.
std::int64_t brute_max_basis_weight(const reftest::RefMatroid& m, const Weights& w) {
  const int r = reftest::brute_rank(m, [&] {
    reftest::Set all(m.n);
    std::iota(all.begin(), all.end(), 0);
    return all;
  }());
  std::int64_t best = std::numeric_limits<std::int64_t>::min();
  for (std::uint32_t mask = 0; mask < (1u << m.n); ++mask) {
    if (__builtin_popcount(mask) != r) continue;
    const auto s = reftest::subset_of_mask(mask, m.n);
    if (!m.indep(s)) continue;
    std::int64_t total = 0;
    for (int e : s) total += w.empty() ? 0 : w[e];
    best = std::max(best, total);
  }
  return best;
}

TEST(Greedy, TriangleKeepsHeavyEdges) {
  QueryLedger ledger;
  const Weights w{5, 3, 3};
  const auto b = greedy_max_weight_basis(*triangle(), w, {}, ledger);
  EXPECT_EQ(b, (ElementSet{0, 1}));
  EXPECT_EQ(total_weight(w, b), 8);
  EXPECT_EQ(total_weight(w, b),
            brute_max_basis_weight(reftest::ref_graphic(3, {{0, 1}, {1, 2}, {0, 2}}), w));
  EXPECT_EQ(ledger.independence_queries(), 3);
}

TEST(Greedy, PreferenceBreaksTies) {
  QueryLedger ledger;
  const std::vector<ElementId> prefer{2};
  EXPECT_EQ(greedy_max_weight_basis(*make_uniform(3, 2), {1, 1, 1}, prefer, ledger),
            (ElementSet{0, 2}));
}

TEST(Greedy, ZeroWeightsGiveIdOrderBasis) {
  QueryLedger ledger;
  EXPECT_EQ(greedy_max_weight_basis(*k4(), {}, {}, ledger), (ElementSet{0, 1, 2}));
}

TEST(Greedy, RejectsWrongWeightLength) {
  QueryLedger ledger;
  EXPECT_THROW(greedy_max_weight_basis(*triangle(), {1, 2}, {}, ledger), InputError);
}

TEST(ParallelRank, OneRoundOnTriangle) {
  QueryLedger ledger(LedgerMode::kParallelSim);
  EXPECT_EQ(parallel_basis_rank(*triangle(), {5, 3, 3}, {}, ledger), (ElementSet{0, 1}));
  EXPECT_EQ(ledger.rounds(), 1);
  EXPECT_EQ(ledger.rank_queries(), 3);
  EXPECT_EQ(ledger.independence_queries(), 0);
}

TEST(ParallelRank, SingleIndependentElement) {
  QueryLedger ledger(LedgerMode::kParallelSim);
  EXPECT_EQ(parallel_basis_rank(*make_uniform(1, 1), {}, {}, ledger), (ElementSet{0}));
  EXPECT_EQ(ledger.rank_queries(), 1);
  EXPECT_EQ(ledger.rounds(), 1);
}

TEST(ParallelIndependence, UniformBasisHasRankSize) {
  QueryLedger ledger(LedgerMode::kParallelSim);
  const auto b = parallel_basis_independence(*make_uniform(16, 4), ledger);
  EXPECT_EQ(b.size(), 4u);
  EXPECT_EQ(ledger.rank_queries(), 0);
}

TEST(ParallelIndependence, K4GivesSpanningTree) {
  QueryLedger ledger(LedgerMode::kParallelSim);
  const auto b = parallel_basis_independence(*k4(), ledger);
  const auto ref = reftest::ref_graphic(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  EXPECT_EQ(static_cast<int>(b.size()), reftest::brute_rank(ref, {0, 1, 2, 3, 4, 5}));
  EXPECT_TRUE(ref.indep(reftest::Set(b.begin(), b.end())));
}

TEST(ParallelIndependence, EmptyAndLoopOnly) {
  QueryLedger ledger(LedgerMode::kParallelSim);
  EXPECT_TRUE(parallel_basis_independence(*make_uniform(0, 0), ledger).empty());
  EXPECT_EQ(ledger.rounds(), 0);
  EXPECT_TRUE(parallel_basis_independence(*make_uniform(5, 0), ledger).empty());
  EXPECT_EQ(ledger.rounds(), 1);
}

TEST(ParallelMaxWeightIndependence, TriangleMatchesGreedy) {
  QueryLedger ledger(LedgerMode::kParallelSim);
  EXPECT_EQ(parallel_max_weight_basis_independence(*triangle(), {5, 3, 3}, {}, ledger),
            (ElementSet{0, 1}));
  EXPECT_EQ(ledger.rank_queries(), 0);
}

TEST(ParallelMaxWeightIndependence, ZeroWeightsMatchRankVariant) {
  Rng rng(31);
  for (int i = 0; i < 20; ++i) {
    const auto t = reftest::random_twin(rng, 12);
    QueryLedger a(LedgerMode::kParallelSim), b(LedgerMode::kParallelSim);
    EXPECT_EQ(parallel_max_weight_basis_independence(*t.m, {}, {}, a),
              parallel_basis_rank(*t.m, {}, {}, b));
  }
}

TEST(ParallelMaxWeightIndependence, RoundsTrackSingleBasisRun) {
  const auto m = make_uniform(64, 8);
  QueryLedger single(LedgerMode::kParallelSim);
  parallel_basis_independence(*m, single);
  QueryLedger all(LedgerMode::kParallelSim);
  parallel_max_weight_basis_independence(*m, {}, {}, all);
  EXPECT_LE(all.rounds(), single.rounds() + 2);
}

Weights random_weights(Rng& rng, int n, int hi) {
  Weights w(n);
  for (auto& x : w) x = reftest::uniform_int(rng, 0, hi);
  return w;
}

std::vector<ElementId> random_prefer(Rng& rng, int n) {
  std::vector<ElementId> p;
  for (int e = 0; e < n; ++e) {
    if (reftest::uniform_int(rng, 0, 2) == 0) p.push_back(e);
  }
  return p;
}

TEST(BasisProperties, GreedyIsOptimalAndSatisfiesExchangeCertificate) {
  Rng rng(32);
  for (int round = 0; round < 300; ++round) {
    const int n = reftest::uniform_int(rng, 0, 10);
    const auto t = reftest::random_twin(rng, n);
    const Weights w = random_weights(rng, n, 4);
    QueryLedger ledger;
    const auto b = greedy_max_weight_basis(*t.m, w, random_prefer(rng, n), ledger);
    ASSERT_EQ(ledger.independence_queries(), n);
    ASSERT_EQ(total_weight(w, b), brute_max_basis_weight(t.ref, w));
    const reftest::Set bs(b.begin(), b.end());
    for (int y = 0; y < n; ++y) {
      if (contains(b, y)) continue;
      for (int x : bs) {
        reftest::Set swapped;
        for (int e : bs) {
          if (e != x) swapped.push_back(e);
        }
        swapped.push_back(y);
        if (t.ref.indep(swapped)) {
          ASSERT_LE(w[y], w[x]);
        }
      }
    }
  }
}

TEST(BasisProperties, AllFindersReturnTheSameSet) {
  Rng rng(33);
  for (int round = 0; round < 300; ++round) {
    const int n = reftest::uniform_int(rng, 0, 24);
    const auto t = reftest::random_twin(rng, n);
    const Weights w = random_weights(rng, n, 3);
    const auto prefer = random_prefer(rng, n);
    QueryLedger seq;
    QueryLedger pr(LedgerMode::kParallelSim);
    QueryLedger pi(LedgerMode::kParallelSim);
    const auto g = greedy_max_weight_basis(*t.m, w, prefer, seq);
    ASSERT_EQ(parallel_basis_rank(*t.m, w, prefer, pr), g);
    ASSERT_EQ(parallel_max_weight_basis_independence(*t.m, w, prefer, pi), g);
    ASSERT_EQ(pr.rounds(), n == 0 ? 0 : 1);
    ASSERT_EQ(pr.rank_queries(), n);
    ASSERT_EQ(pi.rank_queries(), 0);
  }
}

TEST(BasisProperties, LedgerSumsMatchBatchHistory) {
  Rng rng(34);
  for (int round = 0; round < 40; ++round) {
    const auto t = reftest::random_twin(rng, 30);
    QueryLedger ledger(LedgerMode::kParallelSim);
    parallel_max_weight_basis_independence(*t.m, random_weights(rng, 30, 5), {}, ledger);
    std::int64_t total = 0;
    for (const auto& rec : ledger.round_history()) total += rec.size();
    ASSERT_EQ(total, ledger.total_queries());
    ASSERT_EQ(static_cast<std::int64_t>(ledger.round_history().size()), ledger.rounds());
  }
}

// Rounds of the bucketed algorithm against sqrt(r) (1 + ln(n / r)).
TEST(BasisProperties, IndependenceRoundsFollowSqrtRankShape) {
  double worst = 0.0;
  for (int n : {64, 256, 1024}) {
    const int r = static_cast<int>(std::sqrt(n));
    QueryLedger ledger(LedgerMode::kParallelSim);
    const auto b = parallel_basis_independence(*make_uniform(n, r), ledger);
    ASSERT_EQ(static_cast<int>(b.size()), r);
    const double shape = std::sqrt(r) * (1.0 + std::log(static_cast<double>(n) / r));
    worst = std::max(worst, ledger.rounds() / shape);
  }
  EXPECT_LE(worst, 3.0);
}

}  // namespace
}  // namespace matint
