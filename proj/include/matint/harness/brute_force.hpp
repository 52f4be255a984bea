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

#ifndef MATINT_HARNESS_BRUTE_FORCE_HPP_
#define MATINT_HARNESS_BRUTE_FORCE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "matint/basis.hpp"
#include "matint/element_set.hpp"
#include "matint/errors.hpp"
#include "matint/matroid.hpp"

namespace matint {

inline constexpr std::int64_t kBruteForceLimit = 20;

struct BruteForceResult {
  std::int64_t size = 0;
  // Maximum w(S) over all common independent S; 0 without weights.
  std::int64_t weight = 0;
  // A maximum-weight set with weights, a maximum-size set without.
  ElementSet witness;
};

// Enumerates every common independent set, extending only sets that are
// independent in both matroids. Queries the matroids directly.
inline BruteForceResult brute_force_intersection(const Matroid& m1, const Matroid& m2,
                                                 const std::optional<Weights>& w = {}) {
  const std::int64_t n = m1.ground_size();
  if (m2.ground_size() != n) throw InputError("matroids have different ground sets");
  if (n > kBruteForceLimit) {
    throw InputError("brute force refuses n = " + std::to_string(n) + " (limit " +
                     std::to_string(kBruteForceLimit) + ")");
  }
  if (w) {
    if (static_cast<std::int64_t>(w->size()) != n) {
      throw InputError("brute force: weight vector does not match the ground set");
    }
    for (auto x : *w) {
      if (x < 0) throw InputError("brute force: weights must be nonnegative");
    }
  }
  BruteForceResult best;
  bool have = false;
  ElementSet cur;
  auto visit = [&](auto&& self, ElementId next, std::int64_t weight) -> void {
    const auto size = static_cast<std::int64_t>(cur.size());
    best.size = std::max(best.size, size);
    const bool better = w ? (!have || weight > best.weight)
                          : (!have || size > static_cast<std::int64_t>(best.witness.size()));
    if (better) {
      have = true;
      if (w) best.weight = weight;
      best.witness = cur;
    }
    for (ElementId e = next; e < n; ++e) {
      cur.push_back(e);
      if (m1.is_independent(cur) && m2.is_independent(cur)) {
        self(self, e + 1, weight + (w ? (*w)[static_cast<std::size_t>(e)] : 0));
      }
      cur.pop_back();
    }
  };
  visit(visit, 0, 0);
  return best;
}

}  // namespace matint

#endif  // MATINT_HARNESS_BRUTE_FORCE_HPP_
