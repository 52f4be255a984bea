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

// Maximum-weight matroid intersection by weight splitting: a scaling loop
// whose every scale runs the weighted auction and then exchange-graph
// augmentations with potential updates.
//
// All weights are fixed-point integers in units of 2^-K, K being the number
// of scales, so every +-zeta step and every potential update is exact.

#ifndef MATINT_WEIGHTED_HPP_
#define MATINT_WEIGHTED_HPP_

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "matint/auction.hpp"
#include "matint/basis.hpp"
#include "matint/element_set.hpp"
#include "matint/errors.hpp"
#include "matint/exact.hpp"
#include "matint/ledger.hpp"
#include "matint/matroid.hpp"
#include "matint/wrappers.hpp"

namespace matint {

struct WeightSplit {
  Weights w1;
  Weights w2;
};

// w <= w1 + w2 <= w + zeta on every element.
inline bool is_approximate_split(const Weights& w, const WeightSplit& split,
                                 std::int64_t zeta) {
  if (split.w1.size() != w.size() || split.w2.size() != w.size()) return false;
  for (std::size_t e = 0; e < w.size(); ++e) {
    const std::int64_t sum = split.w1[e] + split.w2[e];
    if (sum < w[e] || sum > w[e] + zeta) return false;
  }
  return true;
}

struct WeightedAuctionResult {
  WeightSplit split;
  ElementSet s1;
  ElementSet s2;
  AuctionState state;
};

// Phase 1 of a scale. `prior` must be 2 zeta-approximate and `prior_basis`
// a common basis maximal for both of its halves.
inline WeightedAuctionResult run_weighted_auction(
    const Matroid& m1, const Matroid& m2, const Weights& w,
    const WeightSplit& prior, const ElementSet& prior_basis, std::int64_t zeta,
    const AuctionParams& params, const AuctionOptions& options,
    QueryLedger& ledger) {
  if (zeta < 1) throw InputError("zeta must be a positive fixed-point value");
  if (static_cast<std::int64_t>(w.size()) != m1.ground_size()) {
    throw InputError("weight vector length differs from the ground set");
  }
  if (!is_approximate_split(w, prior, 2 * zeta)) {
    throw InputError("prior split is not 2 zeta-approximate");
  }
  detail::AuctionSetup setup;
  setup.target = w;
  setup.step = zeta;
  setup.w1 = prior.w1;
  setup.w2.resize(w.size());
  for (std::size_t e = 0; e < w.size(); ++e) setup.w2[e] = w[e] - prior.w1[e];
  setup.prefer = prior_basis;
  WeightedAuctionResult out;
  out.state = detail::run_auction_core(m1, m2, params, setup, options, ledger);
  out.split = {out.state.w1, out.state.w2};
  out.s1 = out.state.s1;
  out.s2 = out.state.s2;
  return out;
}

namespace detail {

inline bool is_max_weight_basis(const Matroid& m, const Weights& w,
                                const ElementSet& s) {
  const ElementSet g = unmetered_greedy(m, w, {});
  return g.size() == s.size() && m.is_independent(s) &&
         total_weight(w, g) == total_weight(w, s);
}

}  // namespace detail

struct AugmentStepInfo {
  std::vector<ElementId> path;  // source, ..., sink
  std::int64_t distance = 0;    // d(x*) before the potential update
};

// Phase 2 step. One round of exchange queries on (S1, S2) gives arcs
// y -> x for S1 - x + y in I1 (length w1(x) - w1(y)) and x -> y for
// S2 - x + y in I2 (length w2(x) - w2(y)). Sources are S2 \ S1, sinks
// S1 \ S2. Shortest distances d from the sources give the potential
// pi = min(d, d(x*)), moved from w1 to w2; then a tight source-sink path
// with the fewest arcs is exchanged: an S1 arc u -> v swaps v out of S1 for
// u, an S2 arc u -> v swaps u out of S2 for v.
inline AugmentStepInfo weighted_augment_step(const Matroid& m1,
                                             const Matroid& m2,
                                             WeightSplit& split, ElementSet& s1,
                                             ElementSet& s2, QueryLedger& ledger,
                                             QueryKind kind = QueryKind::kIndependence) {
  const std::int64_t n = m1.ground_size();
  const auto un = static_cast<std::size_t>(n);
  if (s1 == s2) throw InputError("bases already agree");
  MATINT_CHECK(s1.size() == s2.size(), "bases of different sizes");

  std::vector<ExchangeGrid> grids(2);
  grids[0] = {MatroidTag::kM1, kind, &m1, s1, set_difference(full_set(n), s1), false};
  grids[1] = {MatroidTag::kM2, kind, &m2, s2, set_difference(full_set(n), s2), false};
  const auto answers = ledger.submit_grids(grids);
  auto feasible = [&](std::size_t which, std::size_t j, std::size_t i) {
    const auto& g = grids[which];
    const std::int64_t v = answers[which][j * g.base.size() + i];
    return kind == QueryKind::kIndependence
               ? v != 0
               : v == static_cast<std::int64_t>(g.base.size());
  };

  struct Arc {
    std::int32_t to;
    bool first;  // arc of M1
  };
  std::vector<std::vector<Arc>> out(un);
  for (std::size_t j = 0; j < grids[0].ys.size(); ++j) {
    const ElementId y = grids[0].ys[j];
    for (std::size_t i = 0; i < s1.size(); ++i) {
      if (feasible(0, j, i)) out[y].push_back({s1[i], true});
    }
  }
  for (std::size_t j = 0; j < grids[1].ys.size(); ++j) {
    const ElementId y = grids[1].ys[j];
    for (std::size_t i = 0; i < s2.size(); ++i) {
      if (feasible(1, j, i)) out[s2[i]].push_back({y, false});
    }
  }
  auto length = [&](std::int32_t u, const Arc& a) {
    return a.first ? split.w1[a.to] - split.w1[u] : split.w2[u] - split.w2[a.to];
  };
  for (std::size_t u = 0; u < un; ++u) {
    auto& arcs = out[u];
    std::sort(arcs.begin(), arcs.end(), [](const Arc& p, const Arc& q) {
      return p.to != q.to ? p.to < q.to : p.first > q.first;
    });
    for (const Arc& a : arcs) {
      MATINT_CHECK(length(static_cast<std::int32_t>(u), a) >= 0,
                   "negative exchange arc length");
    }
  }

  const ElementSet sources = set_difference(s2, s1);
  const ElementSet sinks = set_difference(s1, s2);
  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();
  std::vector<std::int64_t> d(un, kInf);
  using Item = std::pair<std::int64_t, std::int32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  for (ElementId s : sources) {
    d[s] = 0;
    heap.push({0, s});
  }
  while (!heap.empty()) {
    const auto [du, u] = heap.top();
    heap.pop();
    if (du != d[u]) continue;
    for (const Arc& a : out[u]) {
      const std::int64_t nd = du + length(u, a);
      if (nd < d[a.to]) {
        d[a.to] = nd;
        heap.push({nd, a.to});
      }
    }
  }
  std::int64_t best = kInf;
  for (ElementId x : sinks) best = std::min(best, d[x]);
  if (best == kInf) {
    throw InfeasibleError("no sink reachable in the weighted exchange graph");
  }
  for (std::size_t e = 0; e < un; ++e) {
    const std::int64_t pi = std::min(d[e], best);
    split.w1[e] -= pi;
    split.w2[e] += pi;
  }

  // Arc lengths are now reduced lengths; shortest paths are tight.
  std::vector<std::vector<std::int32_t>> in(un);
  for (std::size_t u = 0; u < un; ++u) {
    for (const Arc& a : out[u]) {
      const std::int64_t len = length(static_cast<std::int32_t>(u), a);
      MATINT_CHECK(len >= 0, "potential update broke an arc length");
      if (len == 0) in[static_cast<std::size_t>(a.to)].push_back(static_cast<std::int32_t>(u));
    }
  }
  std::vector<std::int64_t> hops(un, -1);
  std::queue<std::int32_t> bfs;
  for (ElementId x : sinks) {
    hops[x] = 0;
    bfs.push(x);
  }
  while (!bfs.empty()) {
    const std::int32_t v = bfs.front();
    bfs.pop();
    for (std::int32_t u : in[static_cast<std::size_t>(v)]) {
      if (hops[u] < 0) {
        hops[u] = hops[v] + 1;
        bfs.push(u);
      }
    }
  }
  std::int32_t u = -1;
  for (ElementId s : sources) {
    if (hops[s] >= 0 && (u < 0 || hops[s] < hops[u])) u = s;
  }
  MATINT_CHECK(u >= 0, "no tight path after the potential update");

  AugmentStepInfo info;
  info.distance = best;
  info.path.push_back(u);
  ElementSet add1, drop1, add2, drop2;
  while (hops[u] > 0) {
    const Arc* next = nullptr;
    for (const Arc& a : out[u]) {
      if (hops[a.to] == hops[u] - 1 && length(u, a) == 0) {
        next = &a;
        break;
      }
    }
    MATINT_CHECK(next != nullptr, "tight path lost its successor");
    if (next->first) {
      add1.push_back(u);
      drop1.push_back(next->to);
    } else {
      drop2.push_back(u);
      add2.push_back(next->to);
    }
    u = next->to;
    info.path.push_back(u);
  }
  for (ElementSet* set : {&add1, &drop1, &add2, &drop2}) std::sort(set->begin(), set->end());
  const std::size_t before = set_intersection(s1, s2).size();
  s1 = set_union(set_difference(s1, drop1), add1);
  s2 = set_union(set_difference(s2, drop2), add2);

  MATINT_CHECK(set_intersection(s1, s2).size() == before + 1,
               "exchange did not grow the intersection by one");
  MATINT_CHECK(detail::is_max_weight_basis(m1, split.w1, s1),
               "S1 is not a w1-maximum basis after the exchange");
  MATINT_CHECK(detail::is_max_weight_basis(m2, split.w2, s2),
               "S2 is not a w2-maximum basis after the exchange");
  return info;
}

struct ScaleRecord {
  std::int64_t zeta = 0;
  std::int64_t auction_iterations = 0;
  std::int64_t common_after_auction = 0;
  std::int64_t augment_steps = 0;
};

struct ScaleState {
  WeightSplit split;
  ElementSet basis;
  ScaleRecord record;
};

struct WeightedOptions {
  AuctionOptions auction;
  // Called after every auction iteration of a scale, with that scale's
  // starting split and zeta.
  std::function<void(const AuctionState&, const WeightSplit& prior, std::int64_t zeta)>
      on_auction;
  // Called after every potential update with the current split.
  std::function<void(const WeightSplit&, std::int64_t zeta)> on_split;
};

// One scale: the weighted auction, then augment steps until S1 = S2.
// `r` is the common rank of the prepared matroids.
inline ScaleState refine_scale(const Matroid& m1, const Matroid& m2,
                               const Weights& w, const WeightSplit& prior,
                               const ElementSet& prior_basis, std::int64_t zeta,
                               const AuctionParams& params, std::int64_t r,
                               QueryKind kind, const WeightedOptions& options,
                               QueryLedger& ledger) {
  AuctionOptions auction = options.auction;
  if (options.on_auction) {
    auction.on_iteration = [&](const AuctionState& a) { options.on_auction(a, prior, zeta); };
  }
  auto phase1 = run_weighted_auction(m1, m2, w, prior, prior_basis, zeta, params,
                                     auction, ledger);
  ScaleState st;
  st.split = std::move(phase1.split);
  st.record.zeta = zeta;
  st.record.auction_iterations = phase1.state.iterations;
  const auto common = static_cast<std::int64_t>(set_intersection(phase1.s1, phase1.s2).size());
  st.record.common_after_auction = common;
  MATINT_CHECK(static_cast<double>(common) >=
                   static_cast<double>(r) -
                       (3 * params.eps * static_cast<double>(r) +
                        static_cast<double>(params.delta)) - 1e-9,
               "weighted auction left too small an intersection");
  ElementSet s1 = std::move(phase1.s1);
  ElementSet s2 = std::move(phase1.s2);
  while (s1 != s2) {
    weighted_augment_step(m1, m2, st.split, s1, s2, ledger, kind);
    ++st.record.augment_steps;
    MATINT_CHECK(is_approximate_split(w, st.split, zeta),
                 "split left the zeta band during augmentation");
    if (options.on_split) options.on_split(st.split, zeta);
  }
  st.basis = std::move(s1);
  return st;
}

struct WeightedResult {
  ElementSet solution;
  std::int64_t weight = 0;
  std::int64_t rank = 0;  // maximum common independent set size
  std::int64_t scales = 0;
  std::vector<ScaleRecord> records;
};

// Number of halvings from W down below 1 / (2r).
inline std::int64_t weighted_scale_count(std::int64_t max_weight, std::int64_t r) {
  if (max_weight <= 0) return 0;
  return detail::ceil_log2(max_weight * (2 * r + 1)) + 1;
}

// Maximum-weight common independent set for integer weights w >= 0. A
// sequential ledger uses greedy bases and the sequential exact solver; a
// parallel one uses the oracle-specific finders and exact_parallel.
inline WeightedResult weighted_intersection(const Matroid& m1, const Matroid& m2,
                                            const Weights& w, QueryKind kind,
                                            QueryLedger& ledger,
                                            WeightedOptions options = {}) {
  detail::require_same_ground(m1, m2);
  const std::int64_t n = m1.ground_size();
  if (static_cast<std::int64_t>(w.size()) != n) {
    throw InputError("weight vector length differs from the ground set");
  }
  std::int64_t max_w = 0;
  for (std::int64_t x : w) {
    if (x < 0) throw InputError("negative weight; shift weights to be >= 0");
    max_w = std::max(max_w, x);
  }

  WeightedResult res;
  const ExactResult unweighted = ledger.parallel() ? exact_parallel(m1, m2, kind, ledger)
                                                   : exact_sequential(m1, m2, ledger);
  const auto r = static_cast<std::int64_t>(unweighted.solution.size());
  res.rank = r;
  res.scales = weighted_scale_count(max_w, r);
  if (res.scales == 0) {
    res.solution = unweighted.solution;
    return res;
  }
  const std::int64_t k = res.scales;
  // w1 and w2 stay within a few multiples of W * 2^K.
  if (max_w > (std::numeric_limits<std::int64_t>::max() >> (k + 4))) {
    throw InputError("weights too large for the fixed-point range");
  }

  // Rank r, plus r weight-0 elements free in both, so every common
  // independent set extends to a common basis of the same weight.
  const MatroidHandle e1 = truncate(free_extend(detail::borrow(m1), r), r);
  const MatroidHandle e2 = truncate(free_extend(detail::borrow(m2), r), r);
  const std::int64_t ext = n + r;
  Weights wf(static_cast<std::size_t>(ext), 0);
  for (std::int64_t e = 0; e < n; ++e) wf[e] = w[e] << k;

  WeightSplit split{Weights(static_cast<std::size_t>(ext), max_w << k),
                    Weights(static_cast<std::size_t>(ext), 0)};
  ElementSet basis = unweighted.solution;
  options.auction.finder = !ledger.parallel() ? BasisFinder::kGreedy
                           : kind == QueryKind::kRank ? BasisFinder::kParallelRank
                                                      : BasisFinder::kParallelIndependence;
  const AuctionParams params = exact_parallel_params(ext, r, kind);
  for (std::int64_t s = 1; s <= k; ++s) {
    const std::int64_t zeta = max_w << (k - s);
    ScaleState st = refine_scale(*e1, *e2, wf, split, basis, zeta, params, r, kind,
                                 options, ledger);
    split = std::move(st.split);
    basis = std::move(st.basis);
    res.records.push_back(st.record);
  }

  for (ElementId e : basis) {
    if (e < n) res.solution.push_back(e);
  }
  res.weight = total_weight(w, res.solution);
  MATINT_CHECK(m1.is_independent(res.solution) && m2.is_independent(res.solution),
               "weighted result is not common independent");
  return res;
}

}  // namespace matint

#endif  // MATINT_WEIGHTED_HPP_
