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

// Matroid wrappers: truncation, free extension and restriction.

#ifndef MATINT_WRAPPERS_HPP_
#define MATINT_WRAPPERS_HPP_

#include <algorithm>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "matint/errors.hpp"
#include "matint/matroid.hpp"

namespace matint {

// Independent iff independent in `inner` and of size at most k.
class TruncatedMatroid final : public Matroid {
 public:
  TruncatedMatroid(MatroidHandle inner, std::int64_t k)
      : Matroid(inner ? inner->ground_size() : 0),
        inner_(std::move(inner)),
        k_(k) {
    if (!inner_) throw InputError("truncate: null inner matroid");
    if (k_ < 0) throw InputError("truncate: k must be >= 0");
  }

  MatroidKind kind() const override { return MatroidKind::kTruncated; }
  const MatroidHandle& inner() const { return inner_; }
  std::int64_t k() const { return k_; }

  std::int64_t rank(std::span<const ElementId> s) const override {
    return std::min(inner_->rank(s), k_);
  }
  bool is_independent(std::span<const ElementId> s) const override {
    return static_cast<std::int64_t>(s.size()) <= k_ && inner_->is_independent(s);
  }

  std::unique_ptr<Accumulator> accumulator() const override {
    return std::make_unique<Acc>(inner_->accumulator(), k_);
  }
  std::unique_ptr<PreparedBase> prepare(
      std::span<const ElementId> base) const override {
    return std::make_unique<Prepared>(inner_->prepare(base), k_);
  }

 private:
  class Acc final : public Accumulator {
   public:
    Acc(std::unique_ptr<Accumulator> inner, std::int64_t k)
        : inner_(std::move(inner)), k_(k) {}
    bool try_add(ElementId e) override {
      return inner_->size() < k_ && inner_->try_add(e);
    }
    std::int64_t size() const override { return inner_->size(); }

   private:
    std::unique_ptr<Accumulator> inner_;
    std::int64_t k_;
  };

  class Prepared final : public PreparedBase {
   public:
    Prepared(std::unique_ptr<PreparedBase> inner, std::int64_t k)
        : inner_(std::move(inner)), k_(k) {}
    std::int64_t rank(std::span<const ElementId> removed,
                      std::span<const ElementId> added) const override {
      return std::min(inner_->rank(removed, added), k_);
    }
    std::int64_t base_size() const override { return inner_->base_size(); }

   private:
    std::unique_ptr<PreparedBase> inner_;
    std::int64_t k_;
  };

  MatroidHandle inner_;
  std::int64_t k_;
};

// Direct sum of `inner` with d free elements. The free elements get ids
// inner.n, ..., inner.n + d - 1 so the original ids keep their meaning.
class FreeExtendedMatroid final : public Matroid {
 public:
  FreeExtendedMatroid(MatroidHandle inner, std::int64_t d)
      : Matroid(inner ? inner->ground_size() + d : 0),
        inner_(std::move(inner)),
        d_(d) {
    if (!inner_) throw InputError("free_extend: null inner matroid");
    if (d_ < 0) throw InputError("free_extend: d must be >= 0");
    inner_n_ = inner_->ground_size();
  }

  MatroidKind kind() const override { return MatroidKind::kFreeExtended; }
  const MatroidHandle& inner() const { return inner_; }
  std::int64_t num_dummies() const { return d_; }
  bool is_dummy(ElementId e) const { return e >= inner_n_; }

  std::int64_t rank(std::span<const ElementId> s) const override {
    const auto [real, dummies] = split(s);
    return inner_->rank(real) + dummies;
  }
  bool is_independent(std::span<const ElementId> s) const override {
    return inner_->is_independent(split(s).first);
  }

  std::unique_ptr<Accumulator> accumulator() const override {
    return std::make_unique<Acc>(*this);
  }
  std::unique_ptr<PreparedBase> prepare(
      std::span<const ElementId> base) const override {
    return std::make_unique<Prepared>(*this, base);
  }

 private:
  std::pair<std::vector<ElementId>, std::int64_t> split(
      std::span<const ElementId> s) const {
    std::pair<std::vector<ElementId>, std::int64_t> out{{}, 0};
    out.first.reserve(s.size());
    for (ElementId e : s) {
      if (e < inner_n_) {
        out.first.push_back(e);
      } else {
        ++out.second;
      }
    }
    return out;
  }

  class Acc final : public Accumulator {
   public:
    explicit Acc(const FreeExtendedMatroid& m)
        : m_(m), inner_(m.inner_->accumulator()) {}
    bool try_add(ElementId e) override {
      if (e >= m_.inner_n_) {
        ++dummies_;
        return true;
      }
      return inner_->try_add(e);
    }
    std::int64_t size() const override { return inner_->size() + dummies_; }

   private:
    const FreeExtendedMatroid& m_;
    std::unique_ptr<Accumulator> inner_;
    std::int64_t dummies_ = 0;
  };

  class Prepared final : public PreparedBase {
   public:
    Prepared(const FreeExtendedMatroid& m, std::span<const ElementId> base)
        : m_(m), base_size_(static_cast<std::int64_t>(base.size())) {
      auto [real, dummies] = m.split(base);
      base_dummies_ = dummies;
      inner_ = m.inner_->prepare(real);
    }
    std::int64_t rank(std::span<const ElementId> removed,
                      std::span<const ElementId> added) const override {
      const auto [rem, rem_d] = m_.split(removed);
      const auto [add, add_d] = m_.split(added);
      return inner_->rank(rem, add) + base_dummies_ - rem_d + add_d;
    }
    std::int64_t base_size() const override { return base_size_; }

   private:
    const FreeExtendedMatroid& m_;
    std::unique_ptr<PreparedBase> inner_;
    std::int64_t base_size_;
    std::int64_t base_dummies_ = 0;
  };

  MatroidHandle inner_;
  std::int64_t d_;
  std::int64_t inner_n_ = 0;
};

// The restriction of `inner` to the subset U. Local id i stands for inner
// element U[i]; independence is inherited.
class RestrictedMatroid final : public Matroid {
 public:
  RestrictedMatroid(MatroidHandle inner, std::vector<ElementId> subset)
      : Matroid(static_cast<std::int64_t>(subset.size())),
        inner_(std::move(inner)),
        subset_(std::move(subset)) {
    if (!inner_) throw InputError("restrict: null inner matroid");
    std::vector<char> seen(static_cast<std::size_t>(inner_->ground_size()), 0);
    for (ElementId e : subset_) {
      if (e < 0 || e >= inner_->ground_size()) {
        throw InputError("restrict: element " + std::to_string(e) +
                         " out of range");
      }
      if (seen[e]) {
        throw InputError("restrict: duplicate element " + std::to_string(e));
      }
      seen[e] = 1;
    }
  }

  MatroidKind kind() const override { return MatroidKind::kRestricted; }
  const MatroidHandle& inner() const { return inner_; }
  const std::vector<ElementId>& subset() const { return subset_; }
  ElementId to_inner(ElementId local) const { return subset_[local]; }

  std::int64_t rank(std::span<const ElementId> s) const override {
    return inner_->rank(map(s));
  }
  bool is_independent(std::span<const ElementId> s) const override {
    return inner_->is_independent(map(s));
  }

  std::unique_ptr<Accumulator> accumulator() const override {
    return std::make_unique<Acc>(*this);
  }
  std::unique_ptr<PreparedBase> prepare(
      std::span<const ElementId> base) const override {
    return std::make_unique<Prepared>(*this, base);
  }

 private:
  std::vector<ElementId> map(std::span<const ElementId> s) const {
    std::vector<ElementId> out(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) out[i] = subset_[s[i]];
    return out;
  }

  class Acc final : public Accumulator {
   public:
    explicit Acc(const RestrictedMatroid& m)
        : m_(m), inner_(m.inner_->accumulator()) {}
    bool try_add(ElementId e) override { return inner_->try_add(m_.subset_[e]); }
    std::int64_t size() const override { return inner_->size(); }

   private:
    const RestrictedMatroid& m_;
    std::unique_ptr<Accumulator> inner_;
  };

  class Prepared final : public PreparedBase {
   public:
    Prepared(const RestrictedMatroid& m, std::span<const ElementId> base)
        : m_(m), inner_(m.inner_->prepare(m.map(base))) {}
    std::int64_t rank(std::span<const ElementId> removed,
                      std::span<const ElementId> added) const override {
      return inner_->rank(m_.map(removed), m_.map(added));
    }
    std::int64_t base_size() const override { return inner_->base_size(); }

   private:
    const RestrictedMatroid& m_;
    std::unique_ptr<PreparedBase> inner_;
  };

  MatroidHandle inner_;
  std::vector<ElementId> subset_;
};

inline MatroidHandle truncate(MatroidHandle m, std::int64_t k) {
  return std::make_shared<TruncatedMatroid>(std::move(m), k);
}

inline MatroidHandle free_extend(MatroidHandle m, std::int64_t d) {
  return std::make_shared<FreeExtendedMatroid>(std::move(m), d);
}

inline MatroidHandle restrict_to(MatroidHandle m, std::vector<ElementId> subset) {
  return std::make_shared<RestrictedMatroid>(std::move(m), std::move(subset));
}

}  // namespace matint

#endif  // MATINT_WRAPPERS_HPP_
