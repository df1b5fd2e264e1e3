/*
 * Copyright 2026 The uctjoin Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 * SPDX-License-Identifier: Apache-2.0
 */

// Acceptance checks; prints one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "instances.hpp"
#include "uctjoin/executor.hpp"
#include "uctjoin/generic.hpp"
#include "uctjoin/oracle.hpp"
#include "uctjoin/torture.hpp"
#include "uctjoin/uct.hpp"

namespace uctjoin {
namespace {

using testing::InstanceOptions;
using testing::make_random_instance;
using testing::sorted_rows;

constexpr std::size_t kTortureRows = 1000;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, const Outcome& o) {
  std::printf("ACCEPTANCE %2d %s  %s: %s\n", id, o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

struct Torture {
  TortureInstance instance;
  QuerySpec spec;
};

Torture udf_chain(std::size_t m) {
  TortureInstance t = make_torture({TorturePattern::kChain, m, kTortureRows, TortureMode::kUdf, 1});
  QuerySpec q = parse_query(t.sql, t.catalog);
  return {std::move(t), std::move(q)};
}

Outcome oracle_equivalence() {
  const auto start = std::chrono::steady_clock::now();
  int bad_c = 0, bad_g = 0, bad_h = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto inst = make_random_instance(seed);
    const auto expected = sorted_rows(nested_loop_join(inst.spec, inst.catalog).rows);
    const RunResult c = skinner_c(inst.spec, inst.catalog, {.seed = seed});
    if (sorted_rows(c.result.rows) != expected) ++bad_c;
    SimulatedEngine g_engine(inst.spec, inst.catalog);
    const RunResult g = skinner_g(inst.spec, inst.catalog, g_engine, {.seed = seed});
    if (sorted_rows(g.result.rows) != expected) ++bad_g;
    const auto orders = enumerate_join_orders(JoinGraph::from_query(inst.spec));
    const JoinOrder traditional = orders[seed % orders.size()];
    SimulatedEngine h_engine(inst.spec, inst.catalog);
    const HybridResult h = skinner_h(inst.spec, inst.catalog, h_engine, traditional, {.seed = seed});
    if (sorted_rows(h.run.result.rows) != expected) ++bad_h;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {bad_c + bad_g + bad_h == 0 && secs < 60.0,
          fmt("mismatches C=%d G=%d H=%d over 200 instances, %.1f s (limit 60 s)", bad_c, bad_g, bad_h, secs)};
}

Outcome duplicate_freedom() {
  int bad = 0;
  std::size_t total = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto inst = make_random_instance(seed);
    const std::size_t expected = nested_loop_tuples(inst.spec, inst.catalog).size();
    const RunResult c = skinner_c(inst.spec, inst.catalog, {.budget = 1, .seed = seed});
    total += c.result_set_size;
    if (c.result_set_size != expected || c.tuples.size() != expected) ++bad;
  }
  return {bad == 0, fmt("%d of 200 instances differ in result count with budget 1 (%zu tuples total)", bad, total)};
}

Outcome pyramid_levels() {
  TimeoutLedger ledger;
  bool ok = true;
  for (int i = 0; i < 100000; ++i) ledger.next_timeout();
  const double bound = std::log2(static_cast<double>(ledger.total())) + 1.0;
  ok = static_cast<double>(ledger.used_levels()) <= bound;
  return {ok, fmt("%zu levels used for %llu units, bound %.3f", ledger.used_levels(),
                  static_cast<unsigned long long>(ledger.total()), bound)};
}

Outcome pyramid_balance() {
  TimeoutLedger ledger;
  std::vector<std::size_t> first;
  double worst = 1.0;
  for (int i = 0; i < 100000; ++i) {
    const auto pick = ledger.next_timeout();
    if (first.size() < 11) first.push_back(pick.level);
    std::uint64_t lo = UINT64_MAX, hi = 0;
    for (auto n : ledger.allocations()) {
      if (n == 0) continue;
      lo = std::min(lo, n);
      hi = std::max(hi, n);
    }
    worst = std::max(worst, static_cast<double>(hi) / static_cast<double>(lo));
  }
  const bool prefix_ok = first == std::vector<std::size_t>{0, 0, 1, 0, 0, 1, 2, 0, 0, 1, 0};
  std::string seq;
  for (auto l : first) seq += std::to_string(l);
  return {prefix_ok && worst <= 2.0, fmt("max/min allocation %.4f (limit 2), first levels %s", worst, seq.c_str())};
}

Outcome convergence() {
  const Torture t = udf_chain(5);
  const TableId best_first = optimal_order(t.spec, t.instance.catalog).order[0];
  const std::string best_alias = t.spec.tables[best_first].alias;
  int passed = 0;
  std::string shares;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const RunResult r = skinner_c(t.spec, t.instance.catalog, {.budget = 500, .seed = seed});
    const double top2 = r.stats.top_share(2);
    const double first = r.stats.first_table_share(best_alias);
    if (top2 >= 0.6 && first >= 0.5) ++passed;
    shares += fmt(" %.2f/%.2f", top2, first);
  }
  return {passed >= 9, fmt("%d/10 seeds pass (top-2 share/optimal-first share:%s)", passed, shares.c_str())};
}

Outcome regret_ratio() {
  int passed = 0;
  std::string detail;
  for (std::size_t m : {3, 4, 5}) {
    const Torture t = udf_chain(m);
    const auto& catalog = t.instance.catalog;
    const auto best = optimal_order(t.spec, catalog);
    const double bound = 3.0 * static_cast<double>(m) *
                         static_cast<double>(best.cost + m * kTortureRows);
    const PreparedQuery prepared = preprocess_c(t.spec, catalog);
    const FixedRunResult opt_run = execute_fixed_order(prepared, best.order, {});
    const JoinOrder worst = worst_order(t.spec, catalog, 1'000'000).order;
    const std::uint64_t cap = 50 * opt_run.examined + 1;
    const FixedRunResult worst_run = execute_fixed_order(prepared, worst, {.max_examined = cap});
    const bool worst_ok = worst_run.examined >= 50 * opt_run.examined;
    int seeds_ok = 0;
    std::uint64_t max_examined = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const RunResult r = skinner_c(t.spec, catalog, {.seed = seed});
      max_examined = std::max(max_examined, r.stats.examined_tuples);
      if (worst_ok && static_cast<double>(r.stats.examined_tuples) <= bound) ++seeds_ok;
    }
    if (seeds_ok >= 9) ++passed;
    detail += fmt(" m=%zu: %d/10 seeds, max examined %llu vs bound %.0f, worst>=%llu vs opt %llu;", m, seeds_ok,
                  static_cast<unsigned long long>(max_examined), bound,
                  static_cast<unsigned long long>(worst_run.examined),
                  static_cast<unsigned long long>(opt_run.examined));
  }
  return {passed == 3, detail};
}

Outcome hybrid_bound() {
  int bad = 0;
  double worst_ratio = 0.0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto inst = make_random_instance(1000 + seed);
    const auto best = optimal_order(inst.spec, inst.catalog);
    SimulatedEngine engine(inst.spec, inst.catalog);
    const HybridResult h = skinner_h(inst.spec, inst.catalog, engine, best.order, {.seed = seed});
    const std::uint64_t total = h.run.stats.simulated_units;
    if (total > 5 * best.cost) ++bad;
    if (best.cost > 0) worst_ratio = std::max(worst_ratio, static_cast<double>(total) / best.cost);
  }
  return {bad == 0, fmt("%d of 50 instances exceed 5*T*, max total/T* = %.3f", bad, worst_ratio)};
}

Outcome hash_jump() {
  InstanceOptions opts;
  opts.equality_only = true;
  int bad_output = 0, bad_counter = 0;
  std::uint64_t with = 0, without = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto inst = make_random_instance(5000 + seed, opts);
    const RunResult a = skinner_c(inst.spec, inst.catalog, {.seed = seed, .use_indexes = true});
    const RunResult b = skinner_c(inst.spec, inst.catalog, {.seed = seed, .use_indexes = false});
    if (a.tuples != b.tuples) ++bad_output;
    const PreparedQuery prepared = preprocess_c(inst.spec, inst.catalog);
    for (const JoinOrder& order : enumerate_join_orders(prepared.graph())) {
      const FixedRunResult x = execute_fixed_order(prepared, order, {.use_indexes = true, .max_examined = std::nullopt});
      const FixedRunResult y = execute_fixed_order(prepared, order, {.use_indexes = false, .max_examined = std::nullopt});
      if (x.tuples != y.tuples) ++bad_output;
      if (x.examined > y.examined) ++bad_counter;
      with += x.examined;
      without += y.examined;
    }
  }
  return {bad_output == 0 && bad_counter == 0,
          fmt("output mismatches %d, counter violations %d, examined %llu indexed vs %llu linear", bad_output,
              bad_counter, static_cast<unsigned long long>(with), static_cast<unsigned long long>(without))};
}

Outcome uct_sanity() {
  int passed = 0;
  std::string shares;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    UctTree tree(JoinGraph(2), std::sqrt(2.0));
    Rng rng(seed);
    int good = 0;
    for (int round = 0; round < 10000; ++round) {
      const JoinOrder arm = tree.select(rng);
      const bool is_good = arm[0] == 0;
      good += is_good;
      tree.update(arm, rng.bernoulli(is_good ? 0.9 : 0.1) ? 1.0 : 0.0);
    }
    if (good >= 8000) ++passed;
    shares += fmt(" %.2f", good / 10000.0);
  }
  return {passed >= 18, fmt("%d/20 seeds give the better arm >= 80%% of pulls (shares:%s)", passed, shares.c_str())};
}

Outcome tree_growth() {
  const Torture t = udf_chain(5);
  int passed = 0;
  std::string detail;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const RunResult r = skinner_c(t.spec, t.instance.catalog, {.seed = seed});
    const auto& nodes = r.stats.tree_nodes_timeline;
    const std::size_t n = nodes.size();
    if (n < 4) {
      detail += fmt(" seed %llu: only %zu slices;", static_cast<unsigned long long>(seed), n);
      continue;
    }
    // Nodes added during slices [lo, hi); the tree starts with the root only.
    auto added = [&](std::size_t lo, std::size_t hi) {
      const std::uint64_t before = lo == 0 ? 1 : nodes[lo - 1];
      return nodes[hi - 1] - before;
    };
    const std::uint64_t first = added(0, n / 4);
    const std::uint64_t last = added(n - n / 4, n);
    if (last <= first) ++passed;
    detail += fmt(" %llu/%llu", static_cast<unsigned long long>(first), static_cast<unsigned long long>(last));
  }
  return {passed >= 9, fmt("%d/10 seeds (first/last quartile node growth:%s)", passed, detail.c_str())};
}

}  // namespace
}  // namespace uctjoin

int main() {
  using namespace uctjoin;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"oracle equivalence", oracle_equivalence},
      {"duplicate freedom", duplicate_freedom},
      {"timeout levels", pyramid_levels},
      {"timeout balance", pyramid_balance},
      {"convergence", convergence},
      {"regret ratio", regret_ratio},
      {"hybrid bound", hybrid_bound},
      {"hash-jump equivalence", hash_jump},
      {"uct sanity", uct_sanity},
      {"tree growth", tree_growth},
  };
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    report(static_cast<int>(i + 1), criteria[i].first, o);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
