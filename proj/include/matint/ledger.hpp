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

// Metered oracle access. Every query an algorithm makes goes through a
// QueryLedger, which validates it, answers it and counts it. In parallel
// simulation mode each submitted batch is one adaptive round.

#ifndef MATINT_LEDGER_HPP_
#define MATINT_LEDGER_HPP_

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "matint/element_set.hpp"
#include "matint/errors.hpp"
#include "matint/matroid.hpp"

namespace matint {

enum class LedgerMode { kSequential, kParallelSim };
enum class QueryKind { kIndependence, kRank };
enum class MatroidTag { kM1, kM2, kSingle };

// The queried set is (first `prefix` entries of base) - removed + added.
// prefix < 0 means the whole base. Queries that share a base pointer are
// evaluated together, so exchange-style and prefix-style batches are cheap.
// `base` is an ordered list; `removed` must be drawn from the used part of
// the base and `added` must be disjoint from it.
struct Query {
  MatroidTag tag = MatroidTag::kSingle;
  QueryKind kind = QueryKind::kIndependence;
  const Matroid* matroid = nullptr;
  std::shared_ptr<const std::vector<ElementId>> base;
  std::int64_t prefix = -1;
  std::vector<ElementId> removed;
  std::vector<ElementId> added;

  static Query of_set(MatroidTag tag, QueryKind kind, const Matroid& m,
                      std::vector<ElementId> s) {
    Query q;
    q.tag = tag;
    q.kind = kind;
    q.matroid = &m;
    q.base = std::make_shared<const std::vector<ElementId>>(std::move(s));
    return q;
  }

  static Query prefix_of(MatroidTag tag, QueryKind kind, const Matroid& m,
                         std::shared_ptr<const std::vector<ElementId>> order,
                         std::int64_t length) {
    Query q;
    q.tag = tag;
    q.kind = kind;
    q.matroid = &m;
    q.base = std::move(order);
    q.prefix = length;
    return q;
  }

  static Query exchange(MatroidTag tag, QueryKind kind, const Matroid& m,
                        std::shared_ptr<const std::vector<ElementId>> base,
                        std::vector<ElementId> removed,
                        std::vector<ElementId> added) {
    Query q;
    q.tag = tag;
    q.kind = kind;
    q.matroid = &m;
    q.base = std::move(base);
    q.removed = std::move(removed);
    q.added = std::move(added);
    return q;
  }

  std::int64_t base_length() const {
    return prefix < 0 ? static_cast<std::int64_t>(base->size()) : prefix;
  }
  std::int64_t set_size() const {
    return base_length() - static_cast<std::int64_t>(removed.size()) +
           static_cast<std::int64_t>(added.size());
  }
  // The queried set, materialized (unsorted).
  std::vector<ElementId> materialize() const {
    std::vector<ElementId> s;
    const auto len = static_cast<std::size_t>(base_length());
    s.reserve(len + added.size());
    for (std::size_t i = 0; i < len; ++i) {
      const ElementId e = (*base)[i];
      if (std::find(removed.begin(), removed.end(), e) == removed.end()) {
        s.push_back(e);
      }
    }
    s.insert(s.end(), added.begin(), added.end());
    return s;
  }
};

// An independence answer is 0 or 1; a rank answer is the rank.
struct Answer {
  QueryKind kind = QueryKind::kIndependence;
  std::int64_t value = 0;
  bool independent() const { return value != 0; }
};

struct RoundRecord {
  std::int64_t independence = 0;
  std::int64_t rank = 0;
  std::int64_t size() const { return independence + rank; }
};

// A block of exchange queries around one base S: for each listed y, the set
// S + y (unless with_plain is false) followed by S - S[i] + y for every
// position i of S. Answers come row by row in that order.
struct ExchangeGrid {
  MatroidTag tag = MatroidTag::kSingle;
  QueryKind kind = QueryKind::kIndependence;
  const Matroid* matroid = nullptr;
  std::vector<ElementId> base;
  std::vector<ElementId> ys;
  bool with_plain = true;

  std::int64_t row_size() const {
    return static_cast<std::int64_t>(base.size()) + (with_plain ? 1 : 0);
  }
  std::int64_t size() const {
    return static_cast<std::int64_t>(ys.size()) * row_size();
  }
};

namespace detail {

inline void validate_query(const Query& q,
                           std::map<const void*, std::vector<char>>& masks) {
  if (q.matroid == nullptr || q.base == nullptr) {
    throw InputError("query without matroid or base set");
  }
  const std::int64_t n = q.matroid->ground_size();
  const auto& base = *q.base;
  if (q.prefix > static_cast<std::int64_t>(base.size())) {
    throw InputError("query prefix longer than its base");
  }
  // Validate each distinct (base, matroid) once; prefixes share the mask of
  // the full base, which is fine because the full base is checked for
  // duplicates.
  auto [it, fresh] = masks.try_emplace(q.base.get());
  std::vector<char>& mask = it->second;
  if (fresh) {
    mask.assign(static_cast<std::size_t>(n), 0);
    for (ElementId e : base) {
      if (e < 0 || e >= n) {
        throw InputError("element id " + std::to_string(e) +
                         " out of range [0, " + std::to_string(n) + ")");
      }
      if (mask[e]) {
        throw InputError("duplicate element " + std::to_string(e) + " in query");
      }
      mask[e] = 1;
    }
  } else if (static_cast<std::int64_t>(mask.size()) != n) {
    throw InputError("query base shared between matroids of different size");
  }
  for (ElementId e : q.removed) {
    if (e < 0 || e >= n || !mask[e]) {
      throw InputError("removed element " + std::to_string(e) +
                       " is not in the query base");
    }
  }
  if (q.prefix >= 0 && !q.removed.empty()) {
    const auto head = base.begin() + q.prefix;
    for (ElementId e : q.removed) {
      if (std::find(base.begin(), head, e) == head) {
        throw InputError("removed element outside the query prefix");
      }
    }
  }
  for (std::size_t i = 0; i < q.added.size(); ++i) {
    const ElementId e = q.added[i];
    if (e < 0 || e >= n) {
      throw InputError("element id " + std::to_string(e) + " out of range [0, " +
                       std::to_string(n) + ")");
    }
    if (mask[e]) {
      if (q.prefix < 0 ||
          std::find(base.begin(), base.begin() + q.prefix, e) !=
              base.begin() + q.prefix) {
        throw InputError("added element " + std::to_string(e) +
                         " already in the query base");
      }
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (q.added[j] == e) {
        throw InputError("duplicate element " + std::to_string(e) + " in query");
      }
    }
  }
}

inline Answer answer_from_rank(const Query& q, std::int64_t rank) {
  if (q.kind == QueryKind::kRank) return {QueryKind::kRank, rank};
  return {QueryKind::kIndependence, rank == q.set_size() ? 1 : 0};
}

// Evaluates the queries at `indices`, all sharing matroid and base.
inline void evaluate_group(std::span<const Query> queries,
                           const std::vector<std::size_t>& indices,
                           std::vector<Answer>& out) {
  const Query& first = queries[indices.front()];
  const Matroid& m = *first.matroid;
  const auto& base = *first.base;

  std::vector<std::pair<std::int64_t, std::size_t>> sweeps;
  std::vector<std::size_t> exchanges;
  for (std::size_t i : indices) {
    const Query& q = queries[i];
    if (q.prefix >= 0 && q.removed.empty() && q.added.empty()) {
      sweeps.push_back({q.prefix, i});
    } else if (q.prefix >= 0) {
      out[i] = answer_from_rank(q, m.rank(q.materialize()));
    } else {
      exchanges.push_back(i);
    }
  }

  if (!sweeps.empty()) {
    std::sort(sweeps.begin(), sweeps.end());
    auto acc = m.accumulator();
    std::int64_t pos = 0;
    for (const auto& [len, i] : sweeps) {
      while (pos < len) acc->try_add(base[static_cast<std::size_t>(pos++)]);
      out[i] = answer_from_rank(queries[i], acc->size());
    }
  }

  if (exchanges.size() == 1 && queries[exchanges[0]].removed.empty() &&
      queries[exchanges[0]].added.empty()) {
    const Query& q = queries[exchanges[0]];
    out[exchanges[0]] =
        q.kind == QueryKind::kRank
            ? Answer{QueryKind::kRank, m.rank(base)}
            : Answer{QueryKind::kIndependence, m.is_independent(base) ? 1 : 0};
  } else if (!exchanges.empty()) {
    auto prepared = m.prepare(base);
    for (std::size_t i : exchanges) {
      const Query& q = queries[i];
      out[i] = answer_from_rank(q, prepared->rank(q.removed, q.added));
    }
  }
}

inline std::vector<Answer> evaluate_batch(std::span<const Query> queries,
                                          int threads) {
  std::map<std::pair<const Matroid*, const void*>, std::vector<std::size_t>>
      groups;
  for (std::size_t i = 0; i < queries.size(); ++i) {
    groups[{queries[i].matroid, queries[i].base.get()}].push_back(i);
  }
  std::vector<Answer> out(queries.size());
  std::vector<const std::vector<std::size_t>*> work;
  work.reserve(groups.size());
  for (const auto& [key, idx] : groups) work.push_back(&idx);

  if (threads <= 1 || work.size() <= 1) {
    for (const auto* idx : work) evaluate_group(queries, *idx, out);
    return out;
  }
  // Groups write to disjoint answer slots, so workers only share a cursor.
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::mutex error_mu;
  std::exception_ptr error;
  const int count = std::min<int>(threads, static_cast<int>(work.size()));
  for (int t = 0; t < count; ++t) {
    pool.emplace_back([&] {
      try {
        for (std::size_t g = next++; g < work.size(); g = next++) {
          evaluate_group(queries, *work[g], out);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  return out;
}

inline void validate_grid(const ExchangeGrid& g) {
  if (g.matroid == nullptr) throw InputError("exchange grid without matroid");
  const std::int64_t n = g.matroid->ground_size();
  std::vector<char> mask(static_cast<std::size_t>(n), 0);
  auto mark = [&](ElementId e, const char* what) {
    if (e < 0 || e >= n) {
      throw InputError("element id " + std::to_string(e) + " out of range [0, " +
                       std::to_string(n) + ")");
    }
    if (mask[e]) {
      throw InputError(std::string(what) + " element " + std::to_string(e) +
                       " repeats or lies in the base");
    }
    mask[e] = 1;
  };
  for (ElementId e : g.base) mark(e, "base");
  for (ElementId y : g.ys) mark(y, "added");
}

// Independence answers are 0/1, rank answers the rank.
inline std::vector<std::int64_t> evaluate_grid(const ExchangeGrid& g) {
  std::vector<std::int64_t> out(static_cast<std::size_t>(g.size()));
  if (g.ys.empty()) return out;
  auto prepared = g.matroid->prepare(g.base);
  const std::int64_t full = static_cast<std::int64_t>(g.base.size()) + 1;
  std::size_t k = 0;
  for (const ElementId& y : g.ys) {
    const std::span<const ElementId> add(&y, 1);
    if (g.with_plain) {
      const std::int64_t r = prepared->rank({}, add);
      out[k++] = g.kind == QueryKind::kRank ? r : (r == full ? 1 : 0);
    }
    for (const ElementId& x : g.base) {
      const std::span<const ElementId> rem(&x, 1);
      const std::int64_t rx = prepared->rank(rem, add);
      out[k++] = g.kind == QueryKind::kRank ? rx : (rx == full - 1 ? 1 : 0);
    }
  }
  return out;
}

}  // namespace detail

class QueryLedger;

// Greedy-style access: each try_add(e) is one independence query "is
// current + e independent?". Accepted elements stay in the current set.
class IncrementalSession {
 public:
  IncrementalSession(QueryLedger& ledger, MatroidTag tag, const Matroid& m);
  bool try_add(ElementId e);
  const std::vector<ElementId>& current() const { return current_; }

 private:
  QueryLedger& ledger_;
  MatroidTag tag_;
  const Matroid& m_;
  std::unique_ptr<Accumulator> acc_;
  std::vector<char> used_;
  std::vector<ElementId> current_;
};

class QueryLedger {
 public:
  explicit QueryLedger(LedgerMode mode = LedgerMode::kSequential)
      : mode_(mode) {}
  QueryLedger(const QueryLedger&) = delete;
  QueryLedger& operator=(const QueryLedger&) = delete;

  LedgerMode mode() const { return mode_; }
  bool parallel() const { return mode_ == LedgerMode::kParallelSim; }

  std::int64_t independence_queries() const { return independence_.load(); }
  std::int64_t rank_queries() const { return rank_.load(); }
  std::int64_t total_queries() const {
    return independence_queries() + rank_queries();
  }
  // Always 0 in sequential mode.
  std::int64_t rounds() const { return rounds_.load(); }
  std::vector<RoundRecord> round_history() const {
    std::lock_guard<std::mutex> lock(mu_);
    return history_;
  }

  // A fiber whose ledger has a round limit throws RoundLimitReached when it
  // tries to start a round beyond it.
  void set_round_limit(std::optional<std::int64_t> limit) { limit_ = limit; }
  std::optional<std::int64_t> round_limit() const { return limit_; }
  std::optional<std::int64_t> remaining_rounds() const {
    if (!limit_) return std::nullopt;
    return std::max<std::int64_t>(0, *limit_ - rounds());
  }

  void set_eval_threads(int threads) { eval_threads_ = std::max(1, threads); }
  int eval_threads() const { return eval_threads_; }

  void request_stop() { stop_->store(true); }
  bool stop_requested() const { return stop_->load(); }
  std::shared_ptr<std::atomic<bool>> stop_flag() const { return stop_; }

  // Answers a list of queries that do not depend on each other. In parallel
  // simulation mode this is one round; in sequential mode only the query
  // counters move.
  std::vector<Answer> submit_batch(std::span<const Query> queries) {
    if (queries.empty()) {
      throw InputError("empty batch: a round must contain at least one query");
    }
    std::map<const void*, std::vector<char>> masks;
    for (const Query& q : queries) detail::validate_query(q, masks);
    begin_round();
    RoundRecord rec;
    for (const Query& q : queries) {
      (q.kind == QueryKind::kRank ? rec.rank : rec.independence) += 1;
    }
    charge(rec);
    return detail::evaluate_batch(queries, eval_threads_);
  }

  std::vector<Answer> submit_batch(const std::vector<Query>& queries) {
    return submit_batch(std::span<const Query>(queries));
  }

  // One round holding every query of every grid.
  std::vector<std::vector<std::int64_t>> submit_grids(
      std::span<const ExchangeGrid> grids) {
    RoundRecord rec;
    for (const ExchangeGrid& g : grids) {
      detail::validate_grid(g);
      (g.kind == QueryKind::kRank ? rec.rank : rec.independence) += g.size();
    }
    if (rec.size() == 0) {
      throw InputError("empty batch: a round must contain at least one query");
    }
    begin_round();
    charge(rec);
    std::vector<std::vector<std::int64_t>> out;
    out.reserve(grids.size());
    for (const ExchangeGrid& g : grids) out.push_back(detail::evaluate_grid(g));
    return out;
  }

  bool is_independent(const Matroid& m, std::span<const ElementId> s,
                      MatroidTag tag = MatroidTag::kSingle) {
    const Query q = Query::of_set(tag, QueryKind::kIndependence, m,
                                  std::vector<ElementId>(s.begin(), s.end()));
    return submit_batch(std::span<const Query>(&q, 1)).front().independent();
  }

  std::int64_t rank(const Matroid& m, std::span<const ElementId> s,
                    MatroidTag tag = MatroidTag::kSingle) {
    const Query q = Query::of_set(tag, QueryKind::kRank, m,
                                  std::vector<ElementId>(s.begin(), s.end()));
    return submit_batch(std::span<const Query>(&q, 1)).front().value;
  }

  IncrementalSession incremental(const Matroid& m,
                                 MatroidTag tag = MatroidTag::kSingle) {
    return IncrementalSession(*this, tag, m);
  }

  // Adds a finished fiber group to this ledger: the group's rounds run side
  // by side, so round i of the group holds round i of every fiber.
  void absorb_group(const std::vector<const QueryLedger*>& children) {
    std::vector<RoundRecord> merged;
    std::int64_t ind = 0;
    std::int64_t rk = 0;
    for (const QueryLedger* c : children) {
      ind += c->independence_queries();
      rk += c->rank_queries();
      const auto h = c->round_history();
      if (merged.size() < h.size()) merged.resize(h.size());
      for (std::size_t i = 0; i < h.size(); ++i) {
        merged[i].independence += h[i].independence;
        merged[i].rank += h[i].rank;
      }
    }
    independence_ += ind;
    rank_ += rk;
    if (parallel()) {
      rounds_ += static_cast<std::int64_t>(merged.size());
      std::lock_guard<std::mutex> lock(mu_);
      history_.insert(history_.end(), merged.begin(), merged.end());
    }
  }

 private:
  friend class IncrementalSession;

  void begin_round() {
    if (stop_requested()) throw FiberCancelled();
    if (parallel() && limit_ && rounds() >= *limit_) throw RoundLimitReached();
  }

  void charge(const RoundRecord& rec) {
    independence_ += rec.independence;
    rank_ += rec.rank;
    if (parallel()) {
      ++rounds_;
      std::lock_guard<std::mutex> lock(mu_);
      history_.push_back(rec);
    }
  }

  LedgerMode mode_;
  std::atomic<std::int64_t> independence_{0};
  std::atomic<std::int64_t> rank_{0};
  std::atomic<std::int64_t> rounds_{0};
  mutable std::mutex mu_;
  std::vector<RoundRecord> history_;
  std::optional<std::int64_t> limit_;
  int eval_threads_ = 1;
  std::shared_ptr<std::atomic<bool>> stop_ =
      std::make_shared<std::atomic<bool>>(false);
};

inline IncrementalSession::IncrementalSession(QueryLedger& ledger,
                                              MatroidTag tag, const Matroid& m)
    : ledger_(ledger),
      tag_(tag),
      m_(m),
      acc_(m.accumulator()),
      used_(static_cast<std::size_t>(m.ground_size()), 0) {}

inline bool IncrementalSession::try_add(ElementId e) {
  if (e < 0 || e >= m_.ground_size()) {
    throw InputError("element id " + std::to_string(e) + " out of range");
  }
  if (used_[e]) throw InputError("element offered twice to a greedy session");
  used_[e] = 1;
  ledger_.begin_round();
  ledger_.charge({1, 0});
  if (!acc_->try_add(e)) return false;
  current_.push_back(e);
  return true;
}

// Free-function forms of the two oracle calls.
inline bool is_independent(const Matroid& m, std::span<const ElementId> s,
                           QueryLedger& ledger) {
  return ledger.is_independent(m, s);
}

inline std::int64_t rank(const Matroid& m, std::span<const ElementId> s,
                         QueryLedger& ledger) {
  return ledger.rank(m, s);
}

}  // namespace matint

#endif  // MATINT_LEDGER_HPP_
