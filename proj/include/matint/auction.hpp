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

// The batched auction for matroid intersection, its dual certificate, and
// the additive and multiplicative approximation drivers.

#ifndef MATINT_AUCTION_HPP_
#define MATINT_AUCTION_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "matint/basis.hpp"
#include "matint/element_set.hpp"
#include "matint/errors.hpp"
#include "matint/ledger.hpp"
#include "matint/matroid.hpp"
#include "matint/parallel_group.hpp"

namespace matint {

// ceil(x) that does not round 4.0000000001 up to 5.
inline std::int64_t ceil_tolerant(double x) {
  const double r = std::round(x);
  if (std::abs(x - r) < 1e-9) return static_cast<std::int64_t>(r);
  return static_cast<std::int64_t>(std::ceil(x));
}

struct AuctionParams {
  double eps = 0.5;
  std::int64_t delta = 1;

  // T = ceil(1/eps) weight levels; prices are capped at P = 2T.
  std::int64_t levels() const { return ceil_tolerant(1.0 / eps); }
  std::int64_t price_cap() const { return 2 * levels(); }

  void validate() const {
    if (!(eps > 0.0 && eps < 1.0)) {
      throw InputError("eps must lie in (0, 1), got " + std::to_string(eps));
    }
    if (delta < 1) throw InputError("delta must be >= 1");
  }
};

struct AuctionState;

struct AuctionOptions {
  BasisFinder finder = BasisFinder::kGreedy;
  // Re-derive both maximum-weight bases without metering after every
  // iteration and compare weights.
#ifdef NDEBUG
  bool check_optimality = false;
#else
  bool check_optimality = true;
#endif
  // Called with the state after the initial bases and after every iteration.
  std::function<void(const AuctionState&)> on_iteration;
};

struct AuctionState {
  std::vector<std::int64_t> price;
  Weights w1;
  Weights w2;
  ElementSet s1;
  ElementSet s2;
  // X at termination (fewer than delta elements).
  ElementSet x_final;
  std::int64_t iterations = 0;

  ElementSet solution() const { return set_intersection(s1, s2); }
};

struct DualCertificate {
  ElementSet a;
  ElementSet b;
};

struct ExtractedDual {
  DualCertificate cert;
  std::int64_t t = 0;
  // |S^(t)| + |X|: an upper bound on rank1(A) + rank2(B) - |S|.
  std::int64_t slack = 0;
};

namespace detail {

// Greedy maximum-weight basis straight from the matroid, outside any ledger.
inline ElementSet unmetered_greedy(const Matroid& m, const Weights& w,
                                   std::span<const ElementId> prefer) {
  auto acc = m.accumulator();
  ElementSet s;
  for (ElementId e : tie_break_order(m.ground_size(), w, prefer)) {
    if (acc->try_add(e)) s.push_back(e);
  }
  return make_set(std::move(s));
}

inline std::pair<ElementSet, ElementSet> find_basis_pair(
    const Matroid& m1, const Matroid& m2, const Weights& w1, const Weights& w2,
    const ElementSet& prefer1, const ElementSet& prefer2, BasisFinder finder,
    QueryLedger& ledger) {
  std::vector<Fiber<ElementSet>> fibers;
  fibers.push_back([&](QueryLedger& l) {
    return find_max_weight_basis(finder, m1, w1, prefer1, l, MatroidTag::kM1);
  });
  fibers.push_back([&](QueryLedger& l) {
    return find_max_weight_basis(finder, m2, w2, prefer2, l, MatroidTag::kM2);
  });
  auto res = run_parallel_group(ledger, std::move(fibers));
  if (!res[0] || !res[1]) throw RoundLimitReached();
  return {std::move(*res[0]), std::move(*res[1])};
}

// Shared driver for the unweighted auction and its weighted form. Every
// element keeps w1 + w2 - target in {0, step}: an adjustment raises w2 by
// `step` when the sum equals the target and lowers w1 otherwise.
struct AuctionSetup {
  Weights target;  // empty means all zero
  std::int64_t step = 1;
  Weights w1;      // initial split; empty means all zero
  Weights w2;
  ElementSet prefer;  // tie-break preference for the initial bases
};

inline AuctionState run_auction_core(const Matroid& m1, const Matroid& m2,
                                     const AuctionParams& params,
                                     const AuctionSetup& setup,
                                     const AuctionOptions& options,
                                     QueryLedger& ledger) {
  params.validate();
  if (m1.ground_size() != m2.ground_size()) {
    throw InputError("matroids have different ground sets");
  }
  const std::int64_t n = m1.ground_size();
  const auto un = static_cast<std::size_t>(n);
  const std::int64_t cap = params.price_cap();
  const std::int64_t step = setup.step;
  auto fill = [&](const Weights& w) {
    return w.empty() ? Weights(un, 0) : w;
  };
  const Weights target = fill(setup.target);
  const Weights init1 = fill(setup.w1);
  const Weights init2 = fill(setup.w2);

  AuctionState st;
  st.price.assign(un, 0);
  st.w1 = init1;
  st.w2 = init2;
  std::tie(st.s1, st.s2) = find_basis_pair(m1, m2, st.w1, st.w2, setup.prefer,
                                           setup.prefer, options.finder, ledger);

  auto check_state = [&]() {
    for (std::size_t e = 0; e < un; ++e) {
      const std::int64_t p = st.price[e];
      MATINT_CHECK(p >= 0 && p <= cap, "price out of [0, P]");
      const std::int64_t over = st.w1[e] + st.w2[e] - target[e];
      MATINT_CHECK(over == 0 || over == step, "w1 + w2 drifted from target");
      MATINT_CHECK(st.w1[e] <= init1[e] && st.w2[e] >= init2[e],
                   "weights moved the wrong way");
      MATINT_CHECK(init1[e] - st.w1[e] == (p / 2) * step,
                   "w1 decrements differ from floor(p/2)");
      MATINT_CHECK(st.w2[e] - init2[e] == ((p + 1) / 2) * step,
                   "w2 increments differ from ceil(p/2)");
    }
    for (ElementId e : set_difference(st.s2, st.s1)) {
      MATINT_CHECK(st.price[e] == 0 && st.w2[e] == init2[e],
                   "element of S2 \\ S1 has a nonzero price");
    }
    if (options.check_optimality) {
      const auto g1 = unmetered_greedy(m1, st.w1, {});
      const auto g2 = unmetered_greedy(m2, st.w2, {});
      MATINT_CHECK(total_weight(st.w1, g1) == total_weight(st.w1, st.s1) &&
                       g1.size() == st.s1.size(),
                   "S1 is not a w1-maximum basis");
      MATINT_CHECK(total_weight(st.w2, g2) == total_weight(st.w2, st.s2) &&
                       g2.size() == st.s2.size(),
                   "S2 is not a w2-maximum basis");
    }
    if (options.on_iteration) options.on_iteration(st);
  };
  check_state();

  std::int64_t potential = 0;
  while (true) {
    ElementSet x;
    for (ElementId e : set_difference(st.s1, st.s2)) {
      if (st.price[e] < cap) x.push_back(e);
    }
    if (static_cast<std::int64_t>(x.size()) < params.delta) {
      st.x_final = std::move(x);
      break;
    }
    for (ElementId e : x) {
      ++st.price[e];
      if (st.w1[e] + st.w2[e] == target[e]) {
        st.w2[e] += step;
      } else {
        st.w1[e] -= step;
      }
    }
    potential += static_cast<std::int64_t>(x.size());
    ++st.iterations;
    MATINT_CHECK(potential <= n * cap, "price potential above n * P");
    MATINT_CHECK(st.iterations * params.delta <= n * cap,
                 "more iterations than n * P / delta");
    const ElementSet old1 = st.s1;
    const ElementSet old2 = st.s2;
    std::tie(st.s1, st.s2) = find_basis_pair(m1, m2, st.w1, st.w2, old1, old2,
                                             options.finder, ledger);
    check_state();
  }
  return st;
}

}  // namespace detail

// Batched auction with unit adjustments, starting from all-zero weights and
// the id-ordered greedy bases. Returns S1, S2 with
// |S1 n S2| >= r - (eps r + delta).
inline AuctionState run_auction(const Matroid& m1, const Matroid& m2,
                                const AuctionParams& params,
                                const AuctionOptions& options,
                                QueryLedger& ledger) {
  return detail::run_auction_core(m1, m2, params, {}, options, ledger);
}

// Certificate (A, B) for a finished unweighted run. No oracle queries.
inline ExtractedDual extract_dual(const AuctionState& st,
                                  const AuctionParams& params) {
  const std::int64_t levels = params.levels();
  const ElementSet s = st.solution();
  std::vector<std::int64_t> count(static_cast<std::size_t>(levels), 0);
  for (ElementId e : s) {
    const std::int64_t level = -st.w1[e];
    if (level >= 0 && level < levels) ++count[static_cast<std::size_t>(level)];
  }
  ExtractedDual out;
  out.t = static_cast<std::int64_t>(
      std::min_element(count.begin(), count.end()) - count.begin());
  for (std::size_t e = 0; e < st.w1.size(); ++e) {
    if (st.w1[e] >= -out.t) out.cert.a.push_back(static_cast<ElementId>(e));
    if (st.w2[e] >= 1 + out.t) out.cert.b.push_back(static_cast<ElementId>(e));
  }
  out.slack = count[static_cast<std::size_t>(out.t)] +
              static_cast<std::int64_t>(st.x_final.size());
  return out;
}

struct ApproxResult {
  ElementSet solution;
  AuctionState state;
  AuctionParams params;
  ExtractedDual dual;
  // Estimate of r used to pick delta (multiplicative driver only).
  std::int64_t r_estimate = -1;
};

// |S| >= r - eps n. Runs the auction with eps/2 and delta = ceil(eps n / 2)
// using greedy bases.
inline ApproxResult additive_approx(const Matroid& m1, const Matroid& m2,
                                    double eps, QueryLedger& ledger,
                                    AuctionOptions options = {}) {
  if (!(eps > 0.0 && eps < 1.0)) throw InputError("eps must lie in (0, 1)");
  ApproxResult out;
  out.params.eps = eps / 2;
  out.params.delta = std::max<std::int64_t>(
      1, ceil_tolerant(out.params.eps * static_cast<double>(m1.ground_size())));
  options.finder = BasisFinder::kGreedy;
  out.state = run_auction(m1, m2, out.params, options, ledger);
  out.solution = out.state.solution();
  out.dual = extract_dual(out.state, out.params);
  return out;
}

// |S| >= (1 - eps) r. Estimates r by a maximal common independent set, then
// runs the auction with eps/4 and delta = ceil(eps r~ / 4).
inline ApproxResult multiplicative_approx_simple(const Matroid& m1,
                                                 const Matroid& m2, double eps,
                                                 QueryLedger& ledger,
                                                 AuctionOptions options = {}) {
  if (!(eps > 0.0 && eps < 1.0)) throw InputError("eps must lie in (0, 1)");
  ApproxResult out;
  const ElementSet maximal = greedy_maximal_common(m1, m2, ledger);
  out.r_estimate = static_cast<std::int64_t>(maximal.size());
  out.params.eps = eps / 4;
  out.params.delta = std::max<std::int64_t>(
      1, ceil_tolerant(out.params.eps * static_cast<double>(out.r_estimate)));
  options.finder = BasisFinder::kGreedy;
  out.state = run_auction(m1, m2, out.params, options, ledger);
  out.solution = out.state.solution();
  out.dual = extract_dual(out.state, out.params);
  return out;
}

}  // namespace matint

#endif  // MATINT_AUCTION_HPP_
