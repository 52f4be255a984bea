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

// Exchange graphs, shortest augmenting paths, and the exact solvers.

#ifndef MATINT_EXACT_HPP_
#define MATINT_EXACT_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <memory>
#include <optional>
#include <vector>

#include "matint/auction.hpp"
#include "matint/basis.hpp"
#include "matint/element_set.hpp"
#include "matint/errors.hpp"
#include "matint/ledger.hpp"
#include "matint/matroid.hpp"
#include "matint/parallel_group.hpp"
#include "matint/wrappers.hpp"

namespace matint {

// Nodes 0..n-1 are elements; n is the source and n + 1 the sink.
struct ExchangeGraph {
  std::int64_t n = 0;
  ElementSet s;
  std::vector<std::vector<std::int32_t>> out;

  std::int32_t source() const { return static_cast<std::int32_t>(n); }
  std::int32_t sink() const { return static_cast<std::int32_t>(n + 1); }
  bool has_arc(std::int32_t u, std::int32_t v) const {
    const auto& a = out[static_cast<std::size_t>(u)];
    return std::binary_search(a.begin(), a.end(), v);
  }
  std::int64_t arc_count() const {
    std::int64_t c = 0;
    for (const auto& a : out) c += static_cast<std::int64_t>(a.size());
    return c;
  }
};

namespace detail {

inline void require_same_ground(const Matroid& m1, const Matroid& m2) {
  if (m1.ground_size() != m2.ground_size()) {
    throw InputError("matroids have different ground sets");
  }
}

inline void require_common_independent(const Matroid& m1, const Matroid& m2,
                                       const ElementSet& s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] < 0 || s[i] >= m1.ground_size() || (i > 0 && s[i - 1] >= s[i])) {
      throw InputError("set is not a sorted list of distinct ground elements");
    }
  }
  if (!m1.is_independent(s) || !m2.is_independent(s)) {
    throw InputError("set is not common independent");
  }
}

// Non-owning handle for wrapping a borrowed matroid.
inline MatroidHandle borrow(const Matroid& m) {
  return MatroidHandle(MatroidHandle{}, &m);
}

inline std::int64_t ceil_log2(std::int64_t x) {
  std::int64_t k = 0;
  while ((std::int64_t{1} << k) < x) ++k;
  return k;
}

}  // namespace detail

// One round: for every y outside S, "S + y" and "S - x + y" for each x in S,
// in both matroids. Rank queries are compared against the set size.
inline ExchangeGraph build_exchange_graph(const Matroid& m1, const Matroid& m2,
                                          const ElementSet& s,
                                          QueryLedger& ledger,
                                          QueryKind kind = QueryKind::kIndependence) {
  detail::require_same_ground(m1, m2);
  detail::require_common_independent(m1, m2, s);
  ExchangeGraph g;
  g.n = m1.ground_size();
  g.s = s;
  g.out.assign(static_cast<std::size_t>(g.n + 2), {});
  const ElementSet outside = set_difference(full_set(g.n), s);
  if (outside.empty()) return g;

  std::vector<ExchangeGrid> grids(2);
  for (int i = 0; i < 2; ++i) {
    grids[i].tag = i == 0 ? MatroidTag::kM1 : MatroidTag::kM2;
    grids[i].kind = kind;
    grids[i].matroid = i == 0 ? &m1 : &m2;
    grids[i].base = s;
    grids[i].ys = outside;
  }
  const auto answers = ledger.submit_grids(grids);
  const auto row = static_cast<std::size_t>(grids[0].row_size());
  auto ok = [&](int which, std::size_t j, std::size_t pos) {
    const std::int64_t v = answers[static_cast<std::size_t>(which)][j * row + pos];
    if (kind == QueryKind::kIndependence) return v != 0;
    return v == static_cast<std::int64_t>(s.size()) + (pos == 0 ? 1 : 0);
  };

  for (std::size_t j = 0; j < outside.size(); ++j) {
    const ElementId y = outside[j];
    if (ok(0, j, 0)) g.out[static_cast<std::size_t>(g.source())].push_back(y);
    if (ok(1, j, 0)) g.out[static_cast<std::size_t>(y)].push_back(g.sink());
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (ok(0, j, i + 1)) g.out[static_cast<std::size_t>(s[i])].push_back(y);
      if (ok(1, j, i + 1)) g.out[static_cast<std::size_t>(y)].push_back(s[i]);
    }
  }
  for (auto& a : g.out) std::sort(a.begin(), a.end());
  return g;
}

// Arc distance from every node to the sink; -1 if the sink is unreachable.
inline std::vector<std::int64_t> distances_to_sink(const ExchangeGraph& g) {
  const auto nodes = g.out.size();
  std::vector<std::vector<std::int32_t>> in(nodes);
  for (std::size_t u = 0; u < nodes; ++u) {
    for (std::int32_t v : g.out[u]) in[static_cast<std::size_t>(v)].push_back(static_cast<std::int32_t>(u));
  }
  std::vector<std::int64_t> dist(nodes, -1);
  std::deque<std::int32_t> queue{g.sink()};
  dist[static_cast<std::size_t>(g.sink())] = 0;
  while (!queue.empty()) {
    const std::int32_t v = queue.front();
    queue.pop_front();
    for (std::int32_t u : in[static_cast<std::size_t>(v)]) {
      if (dist[static_cast<std::size_t>(u)] < 0) {
        dist[static_cast<std::size_t>(u)] = dist[static_cast<std::size_t>(v)] + 1;
        queue.push_back(u);
      }
    }
  }
  return dist;
}

// Lexicographically smallest shortest source-sink path, endpoints excluded.
inline std::optional<std::vector<ElementId>> shortest_path(
    const ExchangeGraph& g, const std::vector<std::int64_t>& dist) {
  std::int32_t u = g.source();
  if (dist[static_cast<std::size_t>(u)] < 0) return std::nullopt;
  std::vector<ElementId> path;
  while (u != g.sink()) {
    const std::int64_t want = dist[static_cast<std::size_t>(u)] - 1;
    std::int32_t next = -1;
    for (std::int32_t v : g.out[static_cast<std::size_t>(u)]) {
      if (dist[static_cast<std::size_t>(v)] == want) {
        next = v;
        break;
      }
    }
    MATINT_CHECK(next >= 0, "no successor on a shortest path");
    if (next != g.sink()) path.push_back(next);
    u = next;
  }
  return path;
}

// With no source-sink path, A = elements that reach the sink and B = the
// rest give rank1(A) + rank2(B) = |S|.
inline DualCertificate tight_certificate(const ExchangeGraph& g,
                                         const std::vector<std::int64_t>& dist) {
  DualCertificate c;
  for (ElementId e = 0; e < g.n; ++e) {
    (dist[static_cast<std::size_t>(e)] >= 0 ? c.a : c.b).push_back(e);
  }
  return c;
}

struct AugmentOutcome {
  // Set of size |S| + 1, or nullopt when S is already maximum.
  std::optional<ElementSet> next;
  std::vector<ElementId> path;
  DualCertificate certificate;  // filled when S is maximum
};

inline AugmentOutcome augment(const Matroid& m1, const Matroid& m2,
                              const ElementSet& s, QueryLedger& ledger,
                              QueryKind kind = QueryKind::kIndependence) {
  const ExchangeGraph g = build_exchange_graph(m1, m2, s, ledger, kind);
  const auto dist = distances_to_sink(g);
  AugmentOutcome out;
  auto path = shortest_path(g, dist);
  if (!path) {
    out.certificate = tight_certificate(g, dist);
    return out;
  }
  out.path = *path;
  ElementSet next = s;
  for (ElementId e : out.path) {
    if (contains(s, e)) {
      next = set_difference(next, ElementSet{e});
    } else {
      next = with_element(next, e);
    }
  }
  MATINT_CHECK(next.size() == s.size() + 1, "augmentation did not grow S by one");
  MATINT_CHECK(m1.is_independent(next) && m2.is_independent(next),
               "augmented set is not common independent");
  out.next = std::move(next);
  return out;
}

struct ExactResult {
  ElementSet solution;
  DualCertificate dual;  // tight: rank1(A) + rank2(B) = |solution|
  std::int64_t augmentations = 0;
  // Exchange graphs built along the critical path, times ceil(log2(n + 2))
  // for the reachability each one needs.
  std::int64_t compute_depth = 0;
  // exact_parallel only: per r~, the fiber's solution size (-1 when it was
  // terminated) and the auction iterations of the fiber that produced the
  // answer.
  std::vector<std::int64_t> fiber_sizes;
  std::int64_t auction_iterations = 0;
};

// Repeats augment from S until no path exists. Returns the final set, its
// certificate and the number of successful augmentations.
inline ExactResult augment_to_maximum(const Matroid& m1, const Matroid& m2,
                                      ElementSet s, QueryLedger& ledger,
                                      QueryKind kind = QueryKind::kIndependence) {
  ExactResult res;
  const std::int64_t per_graph = detail::ceil_log2(m1.ground_size() + 2);
  while (true) {
    AugmentOutcome step = augment(m1, m2, s, ledger, kind);
    res.compute_depth += per_graph;
    if (!step.next) {
      res.dual = std::move(step.certificate);
      break;
    }
    s = std::move(*step.next);
    ++res.augmentations;
  }
  res.solution = std::move(s);
  return res;
}

// Reference solver: a greedy maximal common set, then shortest augmenting
// paths until the exchange graph has none.
inline ExactResult exact_sequential(const Matroid& m1, const Matroid& m2,
                                    QueryLedger& ledger) {
  detail::require_same_ground(m1, m2);
  ElementSet start = greedy_maximal_common(m1, m2, ledger);
  return augment_to_maximum(m1, m2, std::move(start), ledger);
}

// Auction parameters for the execution that guesses r = r_guess. The
// formula value of eps is capped at 1/2.
inline AuctionParams exact_parallel_params(std::int64_t n, std::int64_t r_guess,
                                           QueryKind kind) {
  AuctionParams p;
  const double cn = std::cbrt(static_cast<double>(n));
  const double r = static_cast<double>(r_guess);
  double eps;
  double delta;
  if (kind == QueryKind::kRank) {
    eps = r_guess > 0 ? cn * std::pow(r, -2.0 / 3.0) : 1.0;
    delta = cn * std::cbrt(r);
  } else {
    eps = r_guess > 0 ? cn / std::sqrt(r) : 1.0;
    delta = cn * std::sqrt(r);
  }
  p.eps = std::min(eps, 0.5);
  p.delta = std::max<std::int64_t>(1, ceil_tolerant(delta));
  return p;
}

// Runs one execution per guess r~ in {0, ..., n} side by side, each on both
// matroids truncated to r~: the batched auction with the matching basis
// finder, then shortest augmenting paths. Executions with r~ > 2r are cut
// off at the round count of the r~ = 2r execution.
inline ExactResult exact_parallel(const Matroid& m1, const Matroid& m2,
                                  QueryKind kind, QueryLedger& ledger) {
  detail::require_same_ground(m1, m2);
  if (!ledger.parallel()) {
    throw InputError("exact_parallel needs a parallel-simulation ledger");
  }
  const std::int64_t n = m1.ground_size();
  const MatroidHandle h1 = detail::borrow(m1);
  const MatroidHandle h2 = detail::borrow(m2);

  struct Shared {
    std::vector<std::int64_t> size;
    std::vector<std::int64_t> rounds;
    std::optional<std::int64_t> r;
  };
  auto shared = std::make_shared<Shared>();
  shared->size.assign(static_cast<std::size_t>(n + 1), -1);
  shared->rounds.assign(static_cast<std::size_t>(n + 1), -1);

  std::vector<Fiber<ExactResult>> fibers;
  for (std::int64_t k = 0; k <= n; ++k) {
    fibers.push_back([=](QueryLedger& l) {
      if (shared->r && k > 2 * *shared->r) {
        const std::int64_t cut = shared->rounds[static_cast<std::size_t>(2 * *shared->r)];
        if (cut >= 0) {
          const auto inherited = l.round_limit();
          l.set_round_limit(inherited ? std::min(*inherited, cut) : cut);
        }
      }
      const MatroidHandle t1 = truncate(h1, k);
      const MatroidHandle t2 = truncate(h2, k);
      const AuctionParams params = exact_parallel_params(n, k, kind);
      AuctionOptions options;
      options.finder = kind == QueryKind::kRank ? BasisFinder::kParallelRank
                                                : BasisFinder::kParallelIndependence;
      const AuctionState st = run_auction(*t1, *t2, params, options, l);
      ExactResult out = augment_to_maximum(*t1, *t2, st.solution(), l, kind);
      out.auction_iterations = st.iterations;
      const auto size = static_cast<std::int64_t>(out.solution.size());
      shared->size[static_cast<std::size_t>(k)] = size;
      shared->rounds[static_cast<std::size_t>(k)] = l.rounds();
      if (!shared->r && size < k) shared->r = size;
      return out;
    });
  }
  auto results = run_parallel_group(ledger, std::move(fibers));

  std::optional<std::size_t> pick;
  for (std::size_t k = 0; k < results.size(); ++k) {
    if (results[k] && (!pick || results[k]->solution.size() >
                                    results[*pick]->solution.size())) {
      pick = k;
    }
  }
  MATINT_CHECK(pick.has_value(), "every execution was terminated");
  ExactResult best = std::move(*results[*pick]);
  best.fiber_sizes = shared->size;
  // Certificates of the truncated matroids do not carry over; rebuild the
  // tight one on the originals without metering.
  QueryLedger scratch;
  const ExchangeGraph g = build_exchange_graph(m1, m2, best.solution, scratch);
  const auto dist = distances_to_sink(g);
  MATINT_CHECK(!shortest_path(g, dist), "parallel result is not maximum");
  best.dual = tight_certificate(g, dist);
  return best;
}

}  // namespace matint

#endif  // MATINT_EXACT_HPP_
