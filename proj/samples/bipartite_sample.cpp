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

// Bipartite matching as the intersection of two partition matroids, solved
// exactly, approximately and with weights.

#include <cstdint>
#include <cstdio>
#include <utility>
#include <vector>

#include "matint/matint.hpp"

namespace {

void print_set(const char* label, const matint::ElementSet& s) {
  std::printf("%-22s {", label);
  for (std::size_t i = 0; i < s.size(); ++i) std::printf(i ? ", %d" : "%d", static_cast<int>(s[i]));
  std::printf("}\n");
}

}  // namespace

int main() {
  // Edge e = (left, right); each side allows one edge per vertex.
  const std::vector<std::pair<int, int>> edges{{0, 0}, {0, 1}, {1, 0}, {1, 2},
                                               {2, 1}, {2, 2}, {3, 2}, {3, 3}};
  std::vector<std::vector<matint::ElementId>> left(4);
  std::vector<std::vector<matint::ElementId>> right(4);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    left[static_cast<std::size_t>(edges[e].first)].push_back(static_cast<matint::ElementId>(e));
    right[static_cast<std::size_t>(edges[e].second)].push_back(static_cast<matint::ElementId>(e));
  }
  const auto m1 = matint::make_partition(left, {1, 1, 1, 1});
  const auto m2 = matint::make_partition(right, {1, 1, 1, 1});

  matint::QueryLedger exact_ledger;
  const auto exact = matint::exact_sequential(*m1, *m2, exact_ledger);
  print_set("exact matching", exact.solution);
  print_set("certificate A", exact.dual.a);
  print_set("certificate B", exact.dual.b);
  std::printf("%-22s %lld\n", "independence queries",
              static_cast<long long>(exact_ledger.independence_queries()));

  matint::QueryLedger approx_ledger;
  const auto approx = matint::additive_approx(*m1, *m2, 0.25, approx_ledger);
  print_set("auction matching", approx.solution);
  std::printf("%-22s %lld\n", "auction iterations", static_cast<long long>(approx.state.iterations));

  const matint::Weights w{5, 1, 2, 7, 3, 4, 6, 8};
  matint::QueryLedger weighted_ledger;
  const auto best = matint::weighted_intersection(*m1, *m2, w, matint::QueryKind::kIndependence,
                                                  weighted_ledger);
  print_set("max-weight matching", best.solution);
  std::printf("%-22s %lld\n", "weight", static_cast<long long>(best.weight));
  return 0;
}
