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

// Test-side reference matroids written straight from the definitions, plus
// exhaustive oracles and random instance builders. Nothing here calls into
// the library's evaluation code, so the tests compare two independent
// implementations.

#ifndef MATINT_TESTS_SUPPORT_REFERENCE_HPP_
#define MATINT_TESTS_SUPPORT_REFERENCE_HPP_

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include "matint/families.hpp"
#include "matint/wrappers.hpp"

namespace reftest {

using Set = std::vector<int>;

struct RefMatroid {
  int n = 0;
  std::function<bool(const Set&)> indep;
};

inline RefMatroid ref_uniform(int n, int k) {
  return {n, [k](const Set& s) { return static_cast<int>(s.size()) <= k; }};
}

inline RefMatroid ref_partition(int n, std::vector<int> block_of,
                                std::vector<int> caps) {
  return {n, [block_of, caps](const Set& s) {
            std::vector<int> cnt(caps.size(), 0);
            for (int e : s) {
              if (++cnt[block_of[e]] > caps[block_of[e]]) return false;
            }
            return true;
          }};
}

// Forest check by repeatedly deleting leaves.
inline RefMatroid ref_graphic(int nv, std::vector<std::pair<int, int>> edges) {
  const int n = static_cast<int>(edges.size());
  return {n, [nv, edges](const Set& s) {
            std::vector<int> deg(nv, 0);
            std::vector<char> alive(s.size(), 1);
            for (int e : s) {
              if (edges[e].first == edges[e].second) return false;
              ++deg[edges[e].first];
              ++deg[edges[e].second];
            }
            bool changed = true;
            std::size_t left = s.size();
            while (changed) {
              changed = false;
              for (std::size_t i = 0; i < s.size(); ++i) {
                if (!alive[i]) continue;
                const auto [u, v] = edges[s[i]];
                if (deg[u] == 1 || deg[v] == 1) {
                  alive[i] = 0;
                  --deg[u];
                  --deg[v];
                  --left;
                  changed = true;
                }
              }
            }
            return left == 0;
          }};
}

inline std::int64_t mod_pow(std::int64_t a, std::int64_t e, std::int64_t p) {
  std::int64_t r = 1;
  a %= p;
  while (e > 0) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

// Gauss-Jordan with modular inverses.
inline int mod_rank(std::vector<std::vector<std::int64_t>> rows, std::int64_t p) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows[0].size();
  int rank = 0;
  for (std::size_t c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
    int piv = -1;
    for (std::size_t r = rank; r < rows.size(); ++r) {
      if (rows[r][c] % p != 0) {
        piv = static_cast<int>(r);
        break;
      }
    }
    if (piv < 0) continue;
    std::swap(rows[piv], rows[rank]);
    const std::int64_t inv = mod_pow(rows[rank][c], p - 2, p);
    for (auto& x : rows[rank]) x = x * inv % p;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (static_cast<int>(r) == rank || rows[r][c] == 0) continue;
      const std::int64_t f = rows[r][c];
      for (std::size_t k = 0; k < cols; ++k) {
        rows[r][k] = ((rows[r][k] - f * rows[rank][k]) % p + p) % p;
      }
    }
    ++rank;
  }
  return rank;
}

inline RefMatroid ref_linear(std::int64_t p,
                             std::vector<std::vector<std::int64_t>> columns) {
  const int n = static_cast<int>(columns.size());
  for (auto& col : columns) {
    for (auto& x : col) x = ((x % p) + p) % p;
  }
  return {n, [p, columns](const Set& s) {
            std::vector<std::vector<std::int64_t>> rows;
            for (int e : s) rows.push_back(columns[e]);
            return mod_rank(rows, p) == static_cast<int>(s.size());
          }};
}

inline RefMatroid ref_truncate(RefMatroid m, int k) {
  return {m.n, [m, k](const Set& s) {
            return static_cast<int>(s.size()) <= k && m.indep(s);
          }};
}

inline RefMatroid ref_free_extend(RefMatroid m, int d) {
  return {m.n + d, [m](const Set& s) {
            Set inner;
            for (int e : s) {
              if (e < m.n) inner.push_back(e);
            }
            return m.indep(inner);
          }};
}

inline RefMatroid ref_restrict(RefMatroid m, Set u) {
  return {static_cast<int>(u.size()), [m, u](const Set& s) {
            Set inner;
            for (int e : s) inner.push_back(u[e]);
            return m.indep(inner);
          }};
}

inline Set subset_of_mask(std::uint32_t mask, int n) {
  Set s;
  for (int i = 0; i < n; ++i) {
    if (mask >> i & 1u) s.push_back(i);
  }
  return s;
}

// Largest independent subset of s, by enumeration.
inline int brute_rank(const RefMatroid& m, const Set& s) {
  int best = 0;
  const auto k = static_cast<int>(s.size());
  for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
    const int bits = __builtin_popcount(mask);
    if (bits <= best) continue;
    Set sub;
    for (int i = 0; i < k; ++i) {
      if (mask >> i & 1u) sub.push_back(s[i]);
    }
    if (m.indep(sub)) best = bits;
  }
  return best;
}

struct BruteCommon {
  int size = 0;
  std::int64_t weight = 0;  // max weight over all common independent sets
};

inline BruteCommon brute_common(const RefMatroid& a, const RefMatroid& b,
                                const std::vector<std::int64_t>& w = {}) {
  BruteCommon out;
  const int n = a.n;
  // Independence is downward closed, so enumerate by mask and memoize
  // which masks are common-independent.
  std::vector<char> ok(1u << n, 0);
  ok[0] = 1;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    bool sub_ok = true;
    for (int i = 0; i < n && sub_ok; ++i) {
      if ((mask >> i & 1u) && !ok[mask ^ (1u << i)]) sub_ok = false;
    }
    if (!sub_ok) continue;
    const Set s = subset_of_mask(mask, n);
    if (!a.indep(s) || !b.indep(s)) continue;
    ok[mask] = 1;
    out.size = std::max(out.size, static_cast<int>(s.size()));
    if (!w.empty()) {
      std::int64_t total = 0;
      for (int e : s) total += w[e];
      out.weight = std::max(out.weight, total);
    }
  }
  return out;
}

// A library matroid together with its reference twin.
struct Twin {
  matint::MatroidHandle m;
  RefMatroid ref;
};

using Rng = std::mt19937_64;

inline int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline Twin random_uniform(Rng& rng, int n) {
  const int k = uniform_int(rng, 0, n);
  return {matint::make_uniform(n, k), ref_uniform(n, k)};
}

inline Twin random_partition(Rng& rng, int n) {
  const int blocks = uniform_int(rng, 1, std::max(1, n));
  std::vector<int> block_of(n);
  std::vector<std::vector<matint::ElementId>> members(blocks);
  for (int e = 0; e < n; ++e) {
    block_of[e] = uniform_int(rng, 0, blocks - 1);
    members[block_of[e]].push_back(e);
  }
  std::vector<int> caps(blocks);
  std::vector<std::int64_t> caps64(blocks);
  for (int b = 0; b < blocks; ++b) {
    caps[b] = uniform_int(rng, 0, 3);
    caps64[b] = caps[b];
  }
  return {matint::make_partition(members, caps64),
          ref_partition(n, block_of, caps)};
}

inline Twin random_graphic(Rng& rng, int n) {
  const int nv = uniform_int(rng, 1, std::max(2, n / 2 + 2));
  std::vector<std::pair<int, int>> edges(n);
  for (auto& [u, v] : edges) {
    u = uniform_int(rng, 0, nv - 1);
    v = uniform_int(rng, 0, nv - 1);
  }
  return {matint::make_graphic(nv, edges), ref_graphic(nv, edges)};
}

inline Twin random_linear(Rng& rng, int n) {
  static const std::int64_t primes[] = {2, 3, 5, 7, 101};
  const std::int64_t p = primes[uniform_int(rng, 0, 4)];
  const int dim = uniform_int(rng, 1, 5);
  std::vector<std::vector<std::int64_t>> cols(n, std::vector<std::int64_t>(dim));
  for (auto& c : cols) {
    for (auto& x : c) x = uniform_int(rng, -3, 200);
  }
  return {matint::make_linear(p, cols), ref_linear(p, cols)};
}

inline Twin random_base_family(Rng& rng, int n) {
  switch (uniform_int(rng, 0, 3)) {
    case 0:
      return random_uniform(rng, n);
    case 1:
      return random_partition(rng, n);
    case 2:
      return random_graphic(rng, n);
    default:
      return random_linear(rng, n);
  }
}

// Any family, possibly under one or two wrappers; ground size exactly n.
inline Twin random_twin(Rng& rng, int n, bool allow_wrappers = true) {
  if (!allow_wrappers || uniform_int(rng, 0, 2) == 0) {
    return random_base_family(rng, n);
  }
  switch (uniform_int(rng, 0, 2)) {
    case 0: {
      Twin t = random_twin(rng, n, false);
      const int k = uniform_int(rng, 0, n);
      return {matint::truncate(t.m, k), ref_truncate(t.ref, k)};
    }
    case 1: {
      const int d = uniform_int(rng, 0, std::min(3, n));
      Twin t = random_twin(rng, n - d, false);
      return {matint::free_extend(t.m, d), ref_free_extend(t.ref, d)};
    }
    default: {
      const int big = n + uniform_int(rng, 0, 4);
      Twin t = random_twin(rng, big, false);
      std::vector<int> ids(big);
      std::iota(ids.begin(), ids.end(), 0);
      std::shuffle(ids.begin(), ids.end(), rng);
      ids.resize(n);
      std::vector<matint::ElementId> u(ids.begin(), ids.end());
      return {matint::restrict_to(t.m, u), ref_restrict(t.ref, ids)};
    }
  }
}

// Bipartite graph as two partition matroids over its edges: left endpoints
// and right endpoints, capacity 1 each.
struct Bipartite {
  Twin left;
  Twin right;
  int nl = 0;
  int nr = 0;
  std::vector<std::pair<int, int>> edges;
};

inline Bipartite bipartite_pair(int nl, int nr,
                                const std::vector<std::pair<int, int>>& edges) {
  const int n = static_cast<int>(edges.size());
  std::vector<std::vector<matint::ElementId>> lb(nl), rb(nr);
  std::vector<int> lo(n), ro(n);
  for (int e = 0; e < n; ++e) {
    lb[edges[e].first].push_back(e);
    rb[edges[e].second].push_back(e);
    lo[e] = edges[e].first;
    ro[e] = edges[e].second;
  }
  return {{matint::make_partition(lb, std::vector<std::int64_t>(nl, 1)),
           ref_partition(n, lo, std::vector<int>(nl, 1))},
          {matint::make_partition(rb, std::vector<std::int64_t>(nr, 1)),
           ref_partition(n, ro, std::vector<int>(nr, 1))},
          nl,
          nr,
          edges};
}

// Maximum matching size by repeated augmenting paths (Kuhn).
inline int max_matching(const Bipartite& g) {
  std::vector<std::vector<int>> adj(g.nl);
  for (const auto& [u, v] : g.edges) adj[u].push_back(v);
  std::vector<int> match_right(g.nr, -1);
  std::vector<char> seen;
  std::function<bool(int)> try_kuhn = [&](int u) {
    for (int v : adj[u]) {
      if (seen[v]) continue;
      seen[v] = 1;
      if (match_right[v] < 0 || try_kuhn(match_right[v])) {
        match_right[v] = u;
        return true;
      }
    }
    return false;
  };
  int size = 0;
  for (int u = 0; u < g.nl; ++u) {
    seen.assign(g.nr, 0);
    if (try_kuhn(u)) ++size;
  }
  return size;
}

inline Bipartite random_bipartite(Rng& rng, int nl, int nr, double prob) {
  std::vector<std::pair<int, int>> edges;
  std::bernoulli_distribution coin(prob);
  for (int u = 0; u < nl; ++u) {
    for (int v = 0; v < nr; ++v) {
      if (coin(rng)) edges.push_back({u, v});
    }
  }
  return bipartite_pair(nl, nr, edges);
}

}  // namespace reftest

#endif  // MATINT_TESTS_SUPPORT_REFERENCE_HPP_
