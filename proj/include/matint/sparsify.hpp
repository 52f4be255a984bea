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

#ifndef MATINT_SPARSIFY_HPP_
#define MATINT_SPARSIFY_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <vector>

#include "matint/auction.hpp"
#include "matint/basis.hpp"
#include "matint/element_set.hpp"
#include "matint/errors.hpp"
#include "matint/ledger.hpp"
#include "matint/matroid.hpp"
#include "matint/random.hpp"
#include "matint/wrappers.hpp"

namespace matint {

// span(A) = {e : rank(A + e) = rank(A)}. A greedy basis B_A of A costs |A|
// queries, then one batch tests B_A + e for every e outside B_A.
inline ElementSet span(const Matroid& m, std::span<const ElementId> a,
                       QueryLedger& ledger, MatroidTag tag = MatroidTag::kSingle) {
  const std::int64_t n = m.ground_size();
  for (ElementId e : a) {
    if (e < 0 || e >= n) {
      throw InputError("span: element " + std::to_string(e) + " out of range");
    }
  }
  auto session = ledger.incremental(m, tag);
  for (ElementId e : a) session.try_add(e);
  const ElementSet basis = make_set(session.current());
  const auto base = std::make_shared<const std::vector<ElementId>>(basis);

  std::vector<Query> batch;
  std::vector<ElementId> asked;
  for (ElementId e = 0; e < n; ++e) {
    if (contains(basis, e)) continue;
    batch.push_back(Query::exchange(tag, QueryKind::kIndependence, m, base, {}, {e}));
    asked.push_back(e);
  }
  ElementSet out = basis;
  if (!batch.empty()) {
    const auto answers = ledger.submit_batch(batch);
    for (std::size_t i = 0; i < asked.size(); ++i) {
      if (!answers[i].independent()) out.push_back(asked[i]);
    }
  }
  return make_set(std::move(out));
}

// Weight of element e is exp(exponents[e]). Draws m elements i.i.d. in
// proportion to weight and returns the distinct ones.
inline ElementSet sample_subset(const std::vector<std::int64_t>& exponents,
                                std::int64_t m, CounterRng& rng) {
  if (m < 1) throw InputError("sample_subset: sample size must be >= 1");
  if (exponents.empty()) throw InputError("sample_subset: empty ground set");
  const std::int64_t top = *std::max_element(exponents.begin(), exponents.end());
  std::vector<double> prefix(exponents.size());
  double total = 0.0;
  for (std::size_t e = 0; e < exponents.size(); ++e) {
    total += std::exp(static_cast<double>(exponents[e] - top));
    prefix[e] = total;
  }
  std::vector<char> picked(exponents.size(), 0);
  for (std::int64_t i = 0; i < m; ++i) {
    const double x = rng.uniform() * total;
    auto it = std::upper_bound(prefix.begin(), prefix.end(), x);
    if (it == prefix.end()) --it;
    picked[static_cast<std::size_t>(it - prefix.begin())] = 1;
  }
  ElementSet out;
  for (std::size_t e = 0; e < picked.size(); ++e) {
    if (picked[e]) out.push_back(static_cast<ElementId>(e));
  }
  return out;
}

struct MwuOptions {
  double c1 = 4.0;
  double c2 = 4.0;
  // Forwarded to every inner auction.
  AuctionOptions auction;
};

struct MwuIteration {
  ElementSet sample;
  ElementSet solution;
  DualCertificate dual;
  ElementSet span_a;
  ElementSet span_b;
  // Bound on rank1(A_U) + rank2(B_U) - |S_U| from the inner auction.
  std::int64_t slack = 0;
  std::int64_t auction_iterations = 0;
  std::int64_t uncovered = 0;
  // Share of the pre-update total weight that the spans cover.
  double covered_weight_fraction = 0.0;
};

struct MwuResult {
  ElementSet solution;
  std::int64_t r_estimate = 0;
  std::int64_t iterations = 0;
  std::int64_t sample_draws = 0;
  std::int64_t delta = 0;
  double c1 = 0.0;
  double c2 = 0.0;
  // Element e ends with weight exp(exponents[e]).
  std::vector<std::int64_t> exponents;
  std::vector<MwuIteration> records;
  // Record that produced the solution, -1 for the initial greedy set.
  std::int64_t best_iteration = -1;
  // Iterations whose covered weight fell below 1 - eps.
  std::int64_t low_coverage_iterations = 0;
};

struct MwuPlan {
  std::int64_t iterations = 0;
  std::int64_t sample_draws = 0;
  std::int64_t delta = 0;
};

// L = ceil(c2 ln n / eps), m = ceil(c1 r ln n / eps), delta = ceil(eps r),
// each at least 1.
inline MwuPlan mwu_plan(std::int64_t n, std::int64_t r_estimate, double eps,
                        double c1, double c2) {
  const double ln_n = std::log(static_cast<double>(std::max<std::int64_t>(n, 1)));
  MwuPlan p;
  p.iterations = std::max<std::int64_t>(1, ceil_tolerant(c2 * ln_n / eps));
  p.sample_draws = std::max<std::int64_t>(
      1, ceil_tolerant(c1 * static_cast<double>(r_estimate) * ln_n / eps));
  p.delta = std::max<std::int64_t>(1, ceil_tolerant(eps * static_cast<double>(r_estimate)));
  return p;
}

// Multiplicative-weights sparsification around the auction. Each iteration
// solves the instance restricted to a weighted sample and multiplies the
// weight of every element outside span1(A_U) u span2(B_U) by e.
inline MwuResult mwu_sparsified_intersection(const Matroid& m1, const Matroid& m2,
                                             double eps, CounterRng& rng,
                                             QueryLedger& ledger,
                                             const MwuOptions& options = {}) {
  if (!(eps > 0.0 && eps < 1.0)) throw InputError("eps must lie in (0, 1)");
  if (!(options.c1 > 0.0) || !(options.c2 > 0.0)) {
    throw InputError("c1 and c2 must be positive");
  }
  if (m1.ground_size() != m2.ground_size()) {
    throw InputError("matroids have different ground sets");
  }
  const std::int64_t n = m1.ground_size();
  MwuResult out;
  out.c1 = options.c1;
  out.c2 = options.c2;
  out.exponents.assign(static_cast<std::size_t>(n), 0);
  out.solution = greedy_maximal_common(m1, m2, ledger);
  out.r_estimate = static_cast<std::int64_t>(out.solution.size());
  if (out.r_estimate == 0) return out;

  const MwuPlan plan = mwu_plan(n, out.r_estimate, eps, options.c1, options.c2);
  out.iterations = plan.iterations;
  out.sample_draws = plan.sample_draws;
  out.delta = plan.delta;
  const AuctionParams params{eps, plan.delta};
  const MatroidHandle h1(MatroidHandle{}, &m1);
  const MatroidHandle h2(MatroidHandle{}, &m2);

  for (std::int64_t it = 0; it < plan.iterations; ++it) {
    MwuIteration rec;
    rec.sample = sample_subset(out.exponents, plan.sample_draws, rng);
    const auto r1 = restrict_to(h1, rec.sample);
    const auto r2 = restrict_to(h2, rec.sample);
    const AuctionState st = run_auction(*r1, *r2, params, options.auction, ledger);
    const ExtractedDual dual = extract_dual(st, params);
    rec.auction_iterations = st.iterations;
    rec.slack = dual.slack;
    auto lift = [&](const ElementSet& local) {
      ElementSet g;
      g.reserve(local.size());
      for (ElementId e : local) g.push_back(rec.sample[static_cast<std::size_t>(e)]);
      return make_set(std::move(g));
    };
    rec.solution = lift(st.solution());
    rec.dual.a = lift(dual.cert.a);
    rec.dual.b = lift(dual.cert.b);
    MATINT_CHECK(set_union(rec.dual.a, rec.dual.b) == rec.sample,
                 "sample dual does not cover the sample");
    rec.span_a = span(m1, rec.dual.a, ledger, MatroidTag::kM1);
    rec.span_b = span(m2, rec.dual.b, ledger, MatroidTag::kM2);

    const std::int64_t top = *std::max_element(out.exponents.begin(), out.exponents.end());
    const auto covered = membership_mask(set_union(rec.span_a, rec.span_b), n);
    double total = 0.0;
    double covered_weight = 0.0;
    for (std::size_t e = 0; e < covered.size(); ++e) {
      const double w = std::exp(static_cast<double>(out.exponents[e] - top));
      total += w;
      if (covered[e]) covered_weight += w;
    }
    rec.covered_weight_fraction = covered_weight / total;
    if (rec.covered_weight_fraction < 1.0 - eps) ++out.low_coverage_iterations;
    for (std::size_t e = 0; e < covered.size(); ++e) {
      if (!covered[e]) {
        ++out.exponents[e];
        ++rec.uncovered;
      }
    }
    if (rec.solution.size() > out.solution.size()) {
      out.solution = rec.solution;
      out.best_iteration = it;
    }
    out.records.push_back(std::move(rec));
  }
  return out;
}

}  // namespace matint

#endif  // MATINT_SPARSIFY_HPP_
