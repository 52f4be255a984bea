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

#ifndef MATINT_HARNESS_REPORT_HPP_
#define MATINT_HARNESS_REPORT_HPP_

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "matint/auction.hpp"
#include "matint/basis.hpp"
#include "matint/element_set.hpp"
#include "matint/errors.hpp"
#include "matint/exact.hpp"
#include "matint/harness/brute_force.hpp"
#include "matint/harness/instance.hpp"
#include "matint/ledger.hpp"
#include "matint/random.hpp"
#include "matint/sparsify.hpp"
#include "matint/weighted.hpp"

namespace matint {

inline const std::vector<std::string>& algorithm_names() {
  static const std::vector<std::string> names{"auction-additive", "auction-mult", "exact-seq",
                                              "exact-par",        "weighted",     "mwu"};
  return names;
}

struct SolveConfig {
  std::string alg = "exact-seq";
  QueryKind oracle = QueryKind::kIndependence;
  double eps = 0.25;
  // Unset means the algorithm's own choice.
  std::optional<std::int64_t> delta;
  std::uint64_t seed = 0;
  double c1 = 4.0;
  double c2 = 4.0;
  // Count rounds; exact-par always does.
  bool parallel = false;
};

inline const char* to_string(QueryKind k) {
  return k == QueryKind::kRank ? "rank" : "independence";
}

inline QueryKind parse_oracle(const std::string& s) {
  if (s == "independence") return QueryKind::kIndependence;
  if (s == "rank") return QueryKind::kRank;
  throw InputError("unknown oracle '" + s + "' (expected independence or rank)");
}

namespace detail {

inline std::int64_t unmetered_rank(const Matroid& m, const ElementSet& s) {
  return m.rank(s);
}

inline json certificate_json(const DualCertificate& c, std::int64_t declared_slack,
                             bool tight) {
  return {{"a", c.a}, {"b", c.b}, {"declared_slack", declared_slack}, {"tight", tight}};
}

inline BasisFinder auction_finder(QueryKind oracle, bool parallel) {
  if (oracle == QueryKind::kRank) return BasisFinder::kParallelRank;
  return parallel ? BasisFinder::kParallelIndependence : BasisFinder::kGreedy;
}

inline void require_independence_oracle(const SolveConfig& c) {
  if (c.oracle != QueryKind::kIndependence) {
    throw InputError("--alg " + c.alg + " uses the independence oracle only");
  }
}

// Auction with eps scaled by `eps_div`. Delta defaults to
// ceil(eps_used * scale) where scale is n or the greedy estimate of r.
inline void solve_auction(const Matroid& m1, const Matroid& m2, const SolveConfig& c,
                          bool multiplicative, QueryLedger& ledger, json& report) {
  if (!(c.eps > 0.0 && c.eps < 1.0)) throw InputError("eps must lie in (0, 1)");
  AuctionParams params;
  params.eps = c.eps / (multiplicative ? 4 : 2);
  json details;
  double scale = static_cast<double>(m1.ground_size());
  if (multiplicative) {
    const auto r_est = static_cast<std::int64_t>(greedy_maximal_common(m1, m2, ledger).size());
    details["r_estimate"] = r_est;
    scale = static_cast<double>(r_est);
  }
  params.delta = c.delta ? *c.delta : std::max<std::int64_t>(1, ceil_tolerant(params.eps * scale));
  AuctionOptions options;
  options.finder = auction_finder(c.oracle, ledger.parallel());
  const AuctionState st = run_auction(m1, m2, params, options, ledger);
  const ExtractedDual dual = extract_dual(st, params);
  report["solution"] = st.solution();
  report["certificate"] = certificate_json(dual.cert, dual.slack, false);
  details["eps_used"] = params.eps;
  details["delta_used"] = params.delta;
  details["iterations"] = st.iterations;
  details["dual_level"] = dual.t;
  details["finder"] = to_string(options.finder);
  report["details"] = details;
}

inline void solve_mwu(const Matroid& m1, const Matroid& m2, const SolveConfig& c,
                      QueryLedger& ledger, json& report) {
  require_independence_oracle(c);
  CounterRng rng(c.seed);
  MwuOptions options;
  options.c1 = c.c1;
  options.c2 = c.c2;
  const MwuResult res = mwu_sparsified_intersection(m1, m2, c.eps, rng, ledger, options);
  report["solution"] = res.solution;
  const auto n = m1.ground_size();
  const auto size = static_cast<std::int64_t>(res.solution.size());
  // Each iteration's spans plus its uncovered elements cover V; keep the
  // cheapest such cover.
  std::optional<DualCertificate> best;
  std::int64_t best_value = std::numeric_limits<std::int64_t>::max();
  for (const auto& rec : res.records) {
    const ElementSet covered = set_union(rec.span_a, rec.span_b);
    DualCertificate cert{set_union(rec.span_a, set_difference(full_set(n), covered)),
                         rec.span_b};
    const std::int64_t value = unmetered_rank(m1, cert.a) + unmetered_rank(m2, cert.b);
    if (value < best_value) {
      best_value = value;
      best = std::move(cert);
    }
  }
  if (best) {
    report["certificate"] = certificate_json(*best, best_value - size, false);
  } else {
    report["certificate"] = nullptr;
  }
  json coverage = json::array();
  json samples = json::array();
  json uncovered = json::array();
  for (const auto& rec : res.records) {
    coverage.push_back(rec.covered_weight_fraction);
    samples.push_back(rec.sample.size());
    uncovered.push_back(rec.uncovered);
  }
  report["details"] = {{"c1", res.c1},
                       {"c2", res.c2},
                       {"r_estimate", res.r_estimate},
                       {"iterations", res.iterations},
                       {"sample_draws", res.sample_draws},
                       {"delta", res.delta},
                       {"best_iteration", res.best_iteration},
                       {"low_coverage_iterations", res.low_coverage_iterations},
                       {"coverage_fractions", coverage},
                       {"sample_sizes", samples},
                       {"uncovered_counts", uncovered}};
}

inline json weighted_details(const WeightedResult& res) {
  json records = json::array();
  for (const auto& r : res.records) {
    records.push_back({{"zeta", r.zeta},
                       {"auction_iterations", r.auction_iterations},
                       {"common_after_auction", r.common_after_auction},
                       {"augment_steps", r.augment_steps}});
  }
  return {{"rank", res.rank}, {"scales", res.scales}, {"scale_records", records}};
}

}  // namespace detail

// Runs one algorithm and returns its report. All counters come from one
// ledger.
inline json solve(const Instance& inst, const SolveConfig& c) {
  const auto& names = algorithm_names();
  if (std::find(names.begin(), names.end(), c.alg) == names.end()) {
    throw InputError("unknown algorithm '" + c.alg + "'");
  }
  if (c.delta && *c.delta < 1) throw InputError("delta must be >= 1");
  const BuiltInstance b = build_instance(inst);
  const bool parallel = c.parallel || c.alg == "exact-par";
  QueryLedger ledger(parallel ? LedgerMode::kParallelSim : LedgerMode::kSequential);

  json report;
  report["format"] = "matint-report";
  report["version"] = 1;
  report["instance_hash"] = instance_hash(inst);
  report["n"] = b.n;
  report["alg"] = c.alg;
  report["oracle"] = to_string(c.oracle);
  report["mode"] = parallel ? "parallel-sim" : "sequential";
  report["params"] = {{"eps", c.eps},
                      {"delta", c.delta ? json(*c.delta) : json("auto")},
                      {"seed", c.seed},
                      {"c1", c.c1},
                      {"c2", c.c2}};

  const auto start = std::chrono::steady_clock::now();
  if (c.alg == "auction-additive" || c.alg == "auction-mult") {
    detail::solve_auction(*b.m1, *b.m2, c, c.alg == "auction-mult", ledger, report);
  } else if (c.alg == "exact-seq" || c.alg == "exact-par") {
    ExactResult res;
    if (c.alg == "exact-seq") {
      detail::require_independence_oracle(c);
      res = exact_sequential(*b.m1, *b.m2, ledger);
    } else {
      res = exact_parallel(*b.m1, *b.m2, c.oracle, ledger);
    }
    report["solution"] = res.solution;
    report["certificate"] = detail::certificate_json(res.dual, 0, true);
    report["details"] = {{"augmentations", res.augmentations},
                         {"compute_depth", res.compute_depth},
                         {"auction_iterations", res.auction_iterations},
                         {"fiber_sizes", res.fiber_sizes}};
  } else if (c.alg == "weighted") {
    if (!inst.weights) throw InputError("--alg weighted needs an instance with weights");
    const WeightedResult res = weighted_intersection(*b.m1, *b.m2, *inst.weights, c.oracle,
                                                     ledger);
    report["solution"] = res.solution;
    report["certificate"] = nullptr;
    report["details"] = detail::weighted_details(res);
  } else {
    detail::solve_mwu(*b.m1, *b.m2, c, ledger, report);
  }
  const auto stop = std::chrono::steady_clock::now();

  const ElementSet solution = report["solution"].get<ElementSet>();
  report["size"] = solution.size();
  if (inst.weights) report["weight"] = total_weight(*inst.weights, solution);
  report["counters"] = {{"queries_ind", ledger.independence_queries()},
                        {"queries_rank", ledger.rank_queries()},
                        {"rounds", ledger.rounds()}};
  report["wall_ms"] =
      std::chrono::duration<double, std::milli>(stop - start).count();
  return report;
}

// The report without its timing field, for byte comparisons.
inline json without_timing(json report) {
  report.erase("wall_ms");
  return report;
}

struct Verdict {
  bool pass = true;
  std::vector<std::string> violations;
  std::optional<std::int64_t> measured_slack;
  std::int64_t independence_queries = 0;
  std::int64_t rank_queries = 0;

  void fail(std::string clause) {
    pass = false;
    violations.push_back(std::move(clause));
  }
};

namespace detail {

inline ElementSet report_set(const json& j, const std::string& path, std::int64_t n,
                             Verdict& v, const std::string& clause) {
  const auto ids = int_list(j, path, std::numeric_limits<std::int64_t>::min(),
                            std::numeric_limits<std::int64_t>::max());
  ElementSet out;
  for (auto e : ids) {
    if (e < 0 || e >= n) {
      v.fail(clause + ": element " + std::to_string(e) + " out of range");
      continue;
    }
    out.push_back(static_cast<ElementId>(e));
  }
  const ElementSet sorted = make_set(out);
  if (sorted.size() != out.size() || sorted != out) {
    v.fail(clause + ": elements must be sorted and distinct");
  }
  return sorted;
}

}  // namespace detail

// Re-checks a report against its instance. Oracle checks go through a fresh
// ledger whose counts end up in the verdict.
inline Verdict verify_report(const Instance& inst, const json& report) {
  using detail::field;
  Verdict v;
  const BuiltInstance b = build_instance(inst);
  if (!report.is_object()) throw SchemaError("", "expected an object");
  if (field(report, "format", "") != "matint-report") {
    throw SchemaError("/format", "expected \"matint-report\"");
  }
  const json& hash = field(report, "instance_hash", "");
  if (!hash.is_string()) throw SchemaError("/instance_hash", "expected a string");
  if (hash.get<std::string>() != instance_hash(inst)) v.fail("instance: hash mismatch");
  const json& alg = field(report, "alg", "");
  if (!alg.is_string()) throw SchemaError("/alg", "expected a string");

  QueryLedger ledger;
  const ElementSet s = detail::report_set(field(report, "solution", ""), "/solution", b.n, v,
                                          "solution");
  const auto size = static_cast<std::int64_t>(s.size());
  if (detail::as_int(field(report, "size", ""), "/size") != size) {
    v.fail("size: field does not match the solution");
  }
  if (!ledger.is_independent(*b.m1, s, MatroidTag::kM1)) v.fail("independence: S not in I1");
  if (!ledger.is_independent(*b.m2, s, MatroidTag::kM2)) v.fail("independence: S not in I2");

  if (inst.weights) {
    const std::int64_t w = total_weight(*inst.weights, s);
    if (detail::as_int(field(report, "weight", ""), "/weight") != w) {
      v.fail("weight: field does not match w(S)");
    }
    if (alg == "weighted") {
      std::int64_t best = 0;
      if (b.n <= kBruteForceLimit) {
        best = brute_force_intersection(*b.m1, *b.m2, inst.weights).weight;
      } else {
        QueryLedger scratch;
        best = weighted_intersection(*b.m1, *b.m2, *inst.weights, QueryKind::kIndependence,
                                     scratch)
                   .weight;
      }
      if (w != best) {
        v.fail("weight: w(S) = " + std::to_string(w) + " but the optimum is " +
               std::to_string(best));
      }
    }
  }

  const json& cert = field(report, "certificate", "");
  if (!cert.is_null()) {
    const ElementSet a = detail::report_set(field(cert, "a", "/certificate"), "/certificate/a",
                                            b.n, v, "certificate");
    const ElementSet bb = detail::report_set(field(cert, "b", "/certificate"),
                                             "/certificate/b", b.n, v, "certificate");
    const auto declared = detail::as_int(field(cert, "declared_slack", "/certificate"),
                                         "/certificate/declared_slack", 0);
    const json& tight = field(cert, "tight", "/certificate");
    if (!tight.is_boolean()) throw SchemaError("/certificate/tight", "expected a boolean");
    if (static_cast<std::int64_t>(set_union(a, bb).size()) != b.n) {
      v.fail("coverage: A u B != V");
    }
    const std::int64_t slack = ledger.rank(*b.m1, a, MatroidTag::kM1) +
                               ledger.rank(*b.m2, bb, MatroidTag::kM2) - size;
    v.measured_slack = slack;
    if (slack > declared) {
      v.fail("slack: rank1(A) + rank2(B) - |S| = " + std::to_string(slack) +
             " exceeds the declared " + std::to_string(declared));
    }
    if (tight.get<bool>() && slack != 0) {
      v.fail("tight: certificate claimed tight but slack is " + std::to_string(slack));
    }
  }
  v.independence_queries = ledger.independence_queries();
  v.rank_queries = ledger.rank_queries();
  return v;
}

inline json verdict_json(const Verdict& v) {
  json j = {{"verdict", v.pass ? "PASS" : "FAIL"},
            {"violations", v.violations},
            {"queries_ind", v.independence_queries},
            {"queries_rank", v.rank_queries}};
  j["measured_slack"] = v.measured_slack ? json(*v.measured_slack) : json(nullptr);
  return j;
}

}  // namespace matint

#endif  // MATINT_HARNESS_REPORT_HPP_
