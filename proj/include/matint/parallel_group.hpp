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

// Cooperating fibers that share rounds. Fibers execute one after another on
// private ledgers; their round histories are then merged index by index, so
// the group costs max(rounds of any fiber) rounds and the sum of queries.

#ifndef MATINT_PARALLEL_GROUP_HPP_
#define MATINT_PARALLEL_GROUP_HPP_

#include <chrono>
#include <functional>
#include <future>
#include <memory>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

#include "matint/errors.hpp"
#include "matint/ledger.hpp"

namespace matint {

struct GroupOptions {
  // Wall-clock budget per fiber. A fiber that overruns it is asked to stop
  // (its next submit_batch throws FiberCancelled) and abandoned.
  std::optional<std::chrono::milliseconds> fiber_timeout;
};

template <typename T>
using Fiber = std::function<T(QueryLedger&)>;

// Runs the fibers and charges `parent` under the max rule. A fiber that
// hits its ledger's round limit yields std::nullopt ("terminated"). If the
// parent itself has a round limit, children inherit what is left of it and
// a child stopped by that inherited limit stops the parent too.
template <typename T>
std::vector<std::optional<T>> run_parallel_group(
    QueryLedger& parent, std::vector<Fiber<T>> fibers,
    const GroupOptions& options = {}) {
  std::vector<std::shared_ptr<QueryLedger>> ledgers;
  std::vector<std::optional<T>> results(fibers.size());
  const std::optional<std::int64_t> inherited = parent.remaining_rounds();
  bool inherited_limit_hit = false;

  for (std::size_t i = 0; i < fibers.size(); ++i) {
    auto child = std::make_shared<QueryLedger>(parent.mode());
    child->set_eval_threads(parent.eval_threads());
    child->set_round_limit(inherited);
    ledgers.push_back(child);
    try {
      if (options.fiber_timeout) {
        auto fiber = std::make_shared<Fiber<T>>(std::move(fibers[i]));
        std::packaged_task<T()> task([fiber, child] { return (*fiber)(*child); });
        auto future = task.get_future();
        std::thread worker(std::move(task));
        if (future.wait_for(*options.fiber_timeout) ==
            std::future_status::timeout) {
          child->request_stop();
          worker.detach();
          throw TimeoutError("fiber " + std::to_string(i) +
                             " exceeded its time budget");
        }
        worker.join();
        results[i] = future.get();
      } else {
        results[i] = fibers[i](*child);
      }
    } catch (const RoundLimitReached&) {
      if (inherited && child->rounds() >= *inherited &&
          (!child->round_limit() || *child->round_limit() >= *inherited)) {
        inherited_limit_hit = true;
      }
    }
  }

  std::vector<const QueryLedger*> view;
  for (const auto& l : ledgers) view.push_back(l.get());
  parent.absorb_group(view);
  if (inherited_limit_hit) throw RoundLimitReached();
  return results;
}

}  // namespace matint

#endif  // MATINT_PARALLEL_GROUP_HPP_
