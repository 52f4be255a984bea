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

#ifndef MATINT_ELEMENT_SET_HPP_
#define MATINT_ELEMENT_SET_HPP_

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <numeric>
#include <span>
#include <vector>

namespace matint {

// Ground elements are dense ids 0..n-1.
using ElementId = std::int32_t;

// A subset of the ground set, kept sorted ascending without duplicates.
using ElementSet = std::vector<ElementId>;

inline ElementSet make_set(std::vector<ElementId> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

inline ElementSet full_set(std::int64_t n) {
  ElementSet s(static_cast<std::size_t>(n));
  std::iota(s.begin(), s.end(), ElementId{0});
  return s;
}

inline bool contains(std::span<const ElementId> sorted, ElementId e) {
  return std::binary_search(sorted.begin(), sorted.end(), e);
}

inline ElementSet set_union(std::span<const ElementId> a,
                            std::span<const ElementId> b) {
  ElementSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return out;
}

inline ElementSet set_difference(std::span<const ElementId> a,
                                 std::span<const ElementId> b) {
  ElementSet out;
  out.reserve(a.size());
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out));
  return out;
}

inline ElementSet set_intersection(std::span<const ElementId> a,
                                   std::span<const ElementId> b) {
  ElementSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

inline std::vector<char> membership_mask(std::span<const ElementId> s,
                                         std::int64_t n) {
  std::vector<char> mask(static_cast<std::size_t>(n), 0);
  for (ElementId e : s) mask[static_cast<std::size_t>(e)] = 1;
  return mask;
}

inline ElementSet with_element(std::span<const ElementId> s, ElementId e) {
  ElementSet out(s.begin(), s.end());
  out.insert(std::lower_bound(out.begin(), out.end(), e), e);
  return out;
}

}  // namespace matint

#endif  // MATINT_ELEMENT_SET_HPP_
