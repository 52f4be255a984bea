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

// Maximum-weight basis finders: sequential greedy, one-round prefix ranks,
// and the bucketed independence-query algorithm run on all prefixes.

#ifndef MATINT_BASIS_HPP_
#define MATINT_BASIS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "matint/element_set.hpp"
#include "matint/errors.hpp"
#include "matint/ledger.hpp"
#include "matint/matroid.hpp"
#include "matint/parallel_group.hpp"

namespace matint {

// Integer weights, one per ground element. An empty vector means all zero.
using Weights = std::vector<std::int64_t>;

enum class BasisFinder { kGreedy, kParallelRank, kParallelIndependence };

inline const char* to_string(BasisFinder f) {
  switch (f) {
    case BasisFinder::kGreedy:
      return "greedy";
    case BasisFinder::kParallelRank:
      return "parallel-rank";
    case BasisFinder::kParallelIndependence:
      return "parallel-independence";
  }
  return "?";
}

namespace detail {

inline std::int64_t weight_of(const Weights& w, ElementId e) {
  return w.empty() ? 0 : w[static_cast<std::size_t>(e)];
}

inline void check_weights(const Matroid& m, const Weights& w) {
  if (!w.empty() && static_cast<std::int64_t>(w.size()) != m.ground_size()) {
    throw InputError("weight vector has " + std::to_string(w.size()) +
                     " entries for a ground set of " +
                     std::to_string(m.ground_size()));
  }
}

}  // namespace detail

// Scan order: weight descending, then members of `prefer` first, then id.
inline std::vector<ElementId> tie_break_order(std::int64_t n, const Weights& w,
                                              std::span<const ElementId> prefer) {
  std::vector<char> preferred(static_cast<std::size_t>(n), 0);
  for (ElementId e : prefer) {
    if (e < 0 || e >= n) throw InputError("preferred element out of range");
    preferred[e] = 1;
  }
  std::vector<ElementId> order = full_set(n);
  std::sort(order.begin(), order.end(), [&](ElementId a, ElementId b) {
    const std::int64_t wa = detail::weight_of(w, a);
    const std::int64_t wb = detail::weight_of(w, b);
    if (wa != wb) return wa > wb;
    if (preferred[a] != preferred[b]) return preferred[a] > preferred[b];
    return a < b;
  });
  return order;
}

inline std::int64_t total_weight(const Weights& w,
                                 std::span<const ElementId> s) {
  std::int64_t sum = 0;
  for (ElementId e : s) sum += detail::weight_of(w, e);
  return sum;
}

// Greedy in tie-break order; exactly n independence queries.
inline ElementSet greedy_max_weight_basis(const Matroid& m, const Weights& w,
                                          std::span<const ElementId> prefer,
                                          QueryLedger& ledger,
                                          MatroidTag tag = MatroidTag::kSingle) {
  detail::check_weights(m, w);
  auto session = ledger.incremental(m, tag);
  for (ElementId e : tie_break_order(m.ground_size(), w, prefer)) {
    session.try_add(e);
  }
  return make_set(session.current());
}

// Selects the elements whose prefix rank exceeds the previous prefix rank.
inline ElementSet select_rank_increases(std::span<const ElementId> order,
                                        std::span<const std::int64_t> ranks) {
  ElementSet s;
  std::int64_t prev = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (ranks[i] > prev) s.push_back(order[i]);
    prev = ranks[i];
  }
  return make_set(std::move(s));
}

// One batch of n prefix rank queries.
inline ElementSet parallel_basis_rank(const Matroid& m, const Weights& w,
                                      std::span<const ElementId> prefer,
                                      QueryLedger& ledger,
                                      MatroidTag tag = MatroidTag::kSingle) {
  detail::check_weights(m, w);
  const std::int64_t n = m.ground_size();
  if (n == 0) return {};
  auto order = std::make_shared<const std::vector<ElementId>>(
      tie_break_order(n, w, prefer));
  std::vector<Query> batch;
  batch.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 1; i <= n; ++i) {
    batch.push_back(Query::prefix_of(tag, QueryKind::kRank, m, order, i));
  }
  const auto answers = ledger.submit_batch(batch);
  std::vector<std::int64_t> ranks(answers.size());
  for (std::size_t i = 0; i < answers.size(); ++i) ranks[i] = answers[i].value;
  return select_rank_increases(*order, ranks);
}

// Basis of the sub-ground set `ground` (in the given order) with
// independence queries only. Keeps an independent S and the undecided
// candidates C. Each round splits C into consecutive buckets and queries
// S + (first k of bucket) for every bucket and k. Then the first bucket that
// is entirely independent joins S, and in every bucket the first element
// that made the set dependent is dropped: it is spanned by S and the
// bucket's earlier elements, which all stay. The bucket size is
// ceil(sqrt(r_hat)) for a rank estimate r_hat that doubles whenever |S|
// reaches it; once |C| <= 4 r_hat it is ceil(sqrt(|C|)).
inline ElementSet parallel_basis_independence(const Matroid& m,
                                              std::span<const ElementId> ground,
                                              QueryLedger& ledger,
                                              MatroidTag tag = MatroidTag::kSingle) {
  std::vector<ElementId> s;
  std::vector<ElementId> cand(ground.begin(), ground.end());
  std::int64_t r_hat = 1;
  auto isqrt_ceil = [](std::int64_t x) {
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(x)));
    while (r * r < x) ++r;
    while (r > 1 && (r - 1) * (r - 1) >= x) --r;
    return std::max<std::int64_t>(r, 1);
  };

  while (!cand.empty()) {
    const auto c = static_cast<std::int64_t>(cand.size());
    const std::int64_t b = c <= 4 * r_hat ? isqrt_ceil(c) : isqrt_ceil(r_hat);
    auto base = std::make_shared<const std::vector<ElementId>>(s);

    std::vector<Query> batch;
    batch.reserve(cand.size());
    for (std::int64_t start = 0; start < c; start += b) {
      const std::int64_t end = std::min(c, start + b);
      for (std::int64_t k = start + 1; k <= end; ++k) {
        batch.push_back(Query::exchange(
            tag, QueryKind::kIndependence, m, base, {},
            std::vector<ElementId>(cand.begin() + start, cand.begin() + k)));
      }
    }
    const auto answers = ledger.submit_batch(batch);

    std::vector<char> drop(cand.size(), 0);
    std::int64_t grow_start = -1;
    std::int64_t grow_end = -1;
    for (std::int64_t start = 0; start < c; start += b) {
      const std::int64_t end = std::min(c, start + b);
      std::int64_t first_dep = -1;
      for (std::int64_t k = start; k < end; ++k) {
        if (!answers[static_cast<std::size_t>(k)].independent()) {
          first_dep = k;
          break;
        }
      }
      if (first_dep >= 0) {
        drop[static_cast<std::size_t>(first_dep)] = 1;
      } else if (grow_start < 0) {
        grow_start = start;
        grow_end = end;
      }
    }
    if (grow_start >= 0) {
      for (std::int64_t k = grow_start; k < grow_end; ++k) {
        s.push_back(cand[static_cast<std::size_t>(k)]);
        drop[static_cast<std::size_t>(k)] = 1;
      }
    }
    std::vector<ElementId> next;
    next.reserve(cand.size());
    for (std::size_t i = 0; i < cand.size(); ++i) {
      if (!drop[i]) next.push_back(cand[i]);
    }
    cand = std::move(next);
    while (static_cast<std::int64_t>(s.size()) >= r_hat) r_hat *= 2;
  }
  return make_set(std::move(s));
}

inline ElementSet parallel_basis_independence(const Matroid& m,
                                              QueryLedger& ledger,
                                              MatroidTag tag = MatroidTag::kSingle) {
  const auto ground = full_set(m.ground_size());
  return parallel_basis_independence(m, ground, ledger, tag);
}

// Prefix ranks in tie-break order from n cooperating runs of
// parallel_basis_independence, one per prefix.
inline ElementSet parallel_max_weight_basis_independence(
    const Matroid& m, const Weights& w, std::span<const ElementId> prefer,
    QueryLedger& ledger, MatroidTag tag = MatroidTag::kSingle) {
  detail::check_weights(m, w);
  const std::int64_t n = m.ground_size();
  if (n == 0) return {};
  const auto order = tie_break_order(n, w, prefer);
  std::vector<Fiber<std::int64_t>> fibers;
  fibers.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 1; i <= n; ++i) {
    fibers.push_back([&m, &order, i, tag](QueryLedger& l) {
      const std::span<const ElementId> prefix(order.data(),
                                              static_cast<std::size_t>(i));
      return static_cast<std::int64_t>(
          parallel_basis_independence(m, prefix, l, tag).size());
    });
  }
  const auto results = run_parallel_group(ledger, std::move(fibers));
  std::vector<std::int64_t> ranks(results.size());
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (!results[i]) throw RoundLimitReached();
    ranks[i] = *results[i];
  }
  return select_rank_increases(order, ranks);
}

inline ElementSet find_max_weight_basis(BasisFinder finder, const Matroid& m,
                                        const Weights& w,
                                        std::span<const ElementId> prefer,
                                        QueryLedger& ledger,
                                        MatroidTag tag = MatroidTag::kSingle) {
  switch (finder) {
    case BasisFinder::kGreedy:
      return greedy_max_weight_basis(m, w, prefer, ledger, tag);
    case BasisFinder::kParallelRank:
      return parallel_basis_rank(m, w, prefer, ledger, tag);
    case BasisFinder::kParallelIndependence:
      return parallel_max_weight_basis_independence(m, w, prefer, ledger, tag);
  }
  throw InputError("unknown basis finder");
}

// Scans ids ascending and keeps e when S + e is independent in both
// matroids. M2 is asked only when M1 accepts, so at most 2n queries.
inline ElementSet greedy_maximal_common(const Matroid& m1, const Matroid& m2,
                                        QueryLedger& ledger) {
  if (m1.ground_size() != m2.ground_size()) {
    throw InputError("matroids have different ground sets");
  }
  std::vector<ElementId> s;
  for (ElementId e = 0; e < m1.ground_size(); ++e) {
    std::vector<ElementId> with = s;
    with.push_back(e);
    if (!ledger.is_independent(m1, with, MatroidTag::kM1)) continue;
    if (!ledger.is_independent(m2, with, MatroidTag::kM2)) continue;
    s.push_back(e);
  }
  return s;
}

}  // namespace matint

#endif  // MATINT_BASIS_HPP_
