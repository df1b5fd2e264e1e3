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

#include "uctjoin/generic.hpp"

#include <algorithm>

#include "uctjoin/filter.hpp"
#include "uctjoin/oracle.hpp"
#include "uctjoin/reward.hpp"

namespace uctjoin {

std::vector<BatchRange> partition_batches(std::size_t rows, std::size_t b) {
  if (b == 0) throw Error("batch count must be positive");
  const std::size_t count = std::min(b, rows);
  std::vector<BatchRange> out;
  out.reserve(count);
  std::size_t begin = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t size = rows / count + (i < rows % count ? 1 : 0);
    out.push_back({begin, begin + size});
    begin += size;
  }
  return out;
}

std::vector<BatchRange> partition_batches(const FilteredTable& filtered, std::size_t b) {
  return partition_batches(filtered.cardinality(), b);
}

TimeoutLedger::Pick TimeoutLedger::peek() const {
  std::size_t best = 0;
  for (std::size_t level = 1; level <= n_.size(); ++level) {
    const std::uint64_t n_level = level < n_.size() ? n_[level] : 0;
    const std::uint64_t need = n_level + (std::uint64_t{1} << level);
    bool ok = true;
    for (std::size_t l = 0; l < level && ok; ++l) ok = n_[l] >= need;
    if (ok) best = level;
  }
  return {best, std::uint64_t{1} << best};
}

TimeoutLedger::Pick TimeoutLedger::next_timeout() {
  const Pick pick = peek();
  if (pick.level >= n_.size()) n_.resize(pick.level + 1, 0);
  n_[pick.level] += pick.timeout;
  total_ += pick.timeout;
  return pick;
}

std::size_t TimeoutLedger::used_levels() const {
  return static_cast<std::size_t>(std::count_if(n_.begin(), n_.end(), [](std::uint64_t n) { return n > 0; }));
}

SimulatedEngine::SimulatedEngine(const QuerySpec& spec, const Catalog& catalog, std::uint64_t alpha)
    : spec_(&spec), catalog_(&catalog), alpha_(std::max<std::uint64_t>(alpha, 1)) {}

EngineOutcome SimulatedEngine::execute(const JoinOrder& order, const std::vector<std::vector<std::uint32_t>>& domains,
                                       std::uint64_t timeout) {
  ++invocations_;
  auto r = enumerate_left_deep(*spec_, *catalog_, order, domains, timeout / alpha_, true);
  if (r.capped) return {false, timeout, {}};
  return {true, r.cost * alpha_, std::move(r.tuples)};
}

GenericLearner::GenericLearner(const QuerySpec& spec, const Catalog& catalog, BlackBoxEngine& engine,
                               GenericOptions options)
    : spec_(spec), engine_(&engine), options_(options), rng_(options.seed), graph_(JoinGraph::from_query(spec_)) {
  for (TableId t = 0; t < spec_.table_count(); ++t) {
    const FilteredTable filtered = filter_unary(catalog.table(spec_.tables[t].table), spec_, t);
    rows_.emplace_back(filtered.rows().begin(), filtered.rows().end());
    batches_.push_back(partition_batches(filtered, options_.batches));
    finished_ = finished_ || batches_.back().empty();
  }
  offsets_.assign(spec_.table_count(), 0);
  stats_.strategy = "skinner-g-sim";
}

void GenericLearner::step() {
  const TimeoutLedger::Pick pick = ledger_.next_timeout();
  UctTree& tree = trees_.try_emplace(pick.level, graph_, options_.w).first->second;
  const JoinOrder order = tree.select(rng_);
  const TableId lead = order[0];
  std::vector<std::vector<std::uint32_t>> domains(spec_.table_count());
  for (TableId t = 0; t < spec_.table_count(); ++t) {
    // Rows of batches already processed as left-most input are never needed again.
    const std::size_t begin = batches_[t][offsets_[t]].begin;
    const std::size_t end = t == lead ? batches_[t][offsets_[t]].end : rows_[t].size();
    domains[t].assign(rows_[t].begin() + static_cast<std::ptrdiff_t>(begin),
                      rows_[t].begin() + static_cast<std::ptrdiff_t>(end));
  }
  EngineOutcome outcome = engine_->execute(order, domains, pick.timeout);
  const double reward = binary_reward(outcome.success);
  tree.update(order, reward);
  if (outcome.success) {
    tuples_.insert(tuples_.end(), std::make_move_iterator(outcome.tuples.begin()),
                   std::make_move_iterator(outcome.tuples.end()));
    if (++offsets_[lead] == batches_[lead].size()) finished_ = true;
  }
  std::size_t nodes = 0;
  for (const auto& [level, t] : trees_) nodes += t.node_count();
  stats_.simulated_units += outcome.consumed;
  stats_.record_slice(describe(order, spec_), spec_.tables[lead].alias, reward, nodes);
}

std::uint64_t GenericLearner::run(std::optional<std::uint64_t> budget) {
  const std::uint64_t start = stats_.simulated_units;
  while (!finished_) {
    if (budget && stats_.simulated_units - start + ledger_.peek().timeout > *budget) break;
    step();
  }
  return stats_.simulated_units - start;
}

namespace {

RunResult finish_run(const QuerySpec& spec, const Catalog& catalog, TupleList tuples, RunStats stats) {
  RunResult run;
  std::sort(tuples.begin(), tuples.end());
  run.tuples = std::move(tuples);
  run.result_set_size = run.tuples.size();
  run.result = finalize_result(spec, catalog, run.tuples);
  run.stats = std::move(stats);
  run.stats.result_rows = run.tuples.size();
  return run;
}

}  // namespace

RunResult skinner_g(const QuerySpec& spec, const Catalog& catalog, BlackBoxEngine& engine,
                    const GenericOptions& options) {
  GenericLearner learner(spec, catalog, engine, options);
  learner.run();
  return finish_run(spec, catalog, learner.tuples(), learner.stats());
}

HybridResult skinner_h(const QuerySpec& spec, const Catalog& catalog, BlackBoxEngine& engine,
                       const JoinOrder& traditional_order, const GenericOptions& options) {
  if (!traditional_order.is_permutation_of(spec.table_count())) throw Error("invalid traditional join order");
  GenericLearner learner(spec, catalog, engine, options);
  HybridResult out;
  TupleList tuples;
  for (std::size_t i = 0;; ++i) {
    if (i >= 62) throw Error("hybrid execution exceeded the timeout range");
    const std::uint64_t timeout = std::uint64_t{1} << i;
    ++out.traditional_invocations;
    EngineOutcome outcome = engine.execute(traditional_order, learner.filtered_rows(), timeout);
    out.traditional_units += outcome.consumed;
    if (outcome.success) {
      out.traditional_finished = true;
      tuples = std::move(outcome.tuples);
      break;
    }
    out.learned_units += learner.run(timeout);
    if (learner.finished()) {
      tuples = learner.tuples();
      break;
    }
  }
  RunStats stats = learner.stats();
  stats.strategy = "skinner-h-sim";
  stats.simulated_units = out.traditional_units + out.learned_units;
  out.run = finish_run(spec, catalog, std::move(tuples), std::move(stats));
  return out;
}

}  // namespace uctjoin
