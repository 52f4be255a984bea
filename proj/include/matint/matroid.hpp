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

#ifndef MATINT_MATROID_HPP_
#define MATINT_MATROID_HPP_

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "matint/element_set.hpp"

namespace matint {

enum class MatroidKind {
  kUniform,
  kPartition,
  kGraphic,
  kLinear,
  kTruncated,
  kFreeExtended,
  kRestricted,
};

// Incremental independent-set builder. try_add(e) answers "is current + e
// independent?" and, if so, keeps e. A greedy scan or a sweep over all
// prefixes of an ordering costs one try_add per element.
class Accumulator {
 public:
  virtual ~Accumulator() = default;
  virtual bool try_add(ElementId e) = 0;
  virtual std::int64_t size() const = 0;
};

// Answers rank queries of the form base - removed + added for one fixed
// base. `removed` must be a subset of the base and `added` disjoint from it.
// Families override this to answer exchange-style queries without
// re-evaluating the whole base each time.
class PreparedBase {
 public:
  virtual ~PreparedBase() = default;
  virtual std::int64_t rank(std::span<const ElementId> removed,
                            std::span<const ElementId> added) const = 0;
  virtual bool is_independent(std::span<const ElementId> removed,
                              std::span<const ElementId> added) const {
    return rank(removed, added) ==
           base_size() - static_cast<std::int64_t>(removed.size()) +
               static_cast<std::int64_t>(added.size());
  }
  virtual std::int64_t base_size() const = 0;
};

// An immutable matroid over the ground set {0, ..., ground_size() - 1}.
//
// The evaluation methods here are unmetered: they assume the caller already
// validated the subset (distinct ids in range). Algorithms go through
// QueryLedger, which validates and counts; tests and verifiers call these
// directly when a check must not disturb the query accounting.
//
// Instances are safe to evaluate concurrently from several threads.
class Matroid {
 public:
  explicit Matroid(std::int64_t ground_size) : ground_size_(ground_size) {}
  virtual ~Matroid() = default;

  std::int64_t ground_size() const { return ground_size_; }
  virtual MatroidKind kind() const = 0;

  virtual std::int64_t rank(std::span<const ElementId> s) const = 0;
  virtual bool is_independent(std::span<const ElementId> s) const {
    return rank(s) == static_cast<std::int64_t>(s.size());
  }

  virtual std::unique_ptr<Accumulator> accumulator() const;
  virtual std::unique_ptr<PreparedBase> prepare(
      std::span<const ElementId> base) const;

  std::int64_t full_rank() const { return rank(full_set(ground_size_)); }

 private:
  std::int64_t ground_size_;
};

using MatroidHandle = std::shared_ptr<const Matroid>;

namespace detail {

class GenericAccumulator final : public Accumulator {
 public:
  explicit GenericAccumulator(const Matroid& m) : m_(m) {}
  bool try_add(ElementId e) override {
    current_.push_back(e);
    if (m_.is_independent(current_)) return true;
    current_.pop_back();
    return false;
  }
  std::int64_t size() const override {
    return static_cast<std::int64_t>(current_.size());
  }

 private:
  const Matroid& m_;
  std::vector<ElementId> current_;
};

// Materializes base - removed + added and evaluates it from scratch.
class GenericPrepared final : public PreparedBase {
 public:
  GenericPrepared(const Matroid& m, std::span<const ElementId> base)
      : m_(m), base_(base.begin(), base.end()) {}
  std::int64_t rank(std::span<const ElementId> removed,
                    std::span<const ElementId> added) const override {
    return m_.rank(materialize(removed, added));
  }
  bool is_independent(std::span<const ElementId> removed,
                      std::span<const ElementId> added) const override {
    return m_.is_independent(materialize(removed, added));
  }
  std::int64_t base_size() const override {
    return static_cast<std::int64_t>(base_.size());
  }

 private:
  std::vector<ElementId> materialize(std::span<const ElementId> removed,
                                     std::span<const ElementId> added) const {
    std::vector<ElementId> s;
    s.reserve(base_.size() + added.size());
    for (ElementId e : base_) {
      bool drop = false;
      for (ElementId r : removed) {
        if (r == e) {
          drop = true;
          break;
        }
      }
      if (!drop) s.push_back(e);
    }
    s.insert(s.end(), added.begin(), added.end());
    return s;
  }

  const Matroid& m_;
  std::vector<ElementId> base_;
};

}  // namespace detail

inline std::unique_ptr<Accumulator> Matroid::accumulator() const {
  return std::make_unique<detail::GenericAccumulator>(*this);
}

inline std::unique_ptr<PreparedBase> Matroid::prepare(
    std::span<const ElementId> base) const {
  return std::make_unique<detail::GenericPrepared>(*this, base);
}

}  // namespace matint

#endif  // MATINT_MATROID_HPP_
