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

#include "uctjoin/executor.hpp"

#include <algorithm>
#include <future>

#include "uctjoin/filter.hpp"
#include "uctjoin/reward.hpp"
#include "uctjoin/uct.hpp"

namespace uctjoin {

PreparedQuery::PreparedQuery(QuerySpec spec)
    : spec_(std::move(spec)), graph_(JoinGraph::from_query(spec_)) {}

const Column* PreparedQuery::column(TableId t, std::size_t source_column) const {
  auto it = columns_[t].find(source_column);
  return it == columns_[t].end() ? nullptr : &it->second;
}

const HashIndex* PreparedQuery::index(TableId t, std::size_t source_column) const {
  auto it = indexes_[t].find(source_column);
  return it == indexes_[t].end() ? nullptr : &it->second;
}

std::size_t PreparedQuery::index_count() const {
  std::size_t n = 0;
  for (const auto& m : indexes_) n += m.size();
  return n;
}

namespace {

struct PreparedTable {
  FilteredTable filtered;
  std::map<std::size_t, Column> columns;
  std::map<std::size_t, HashIndex> indexes;
};

PreparedTable prepare_table(const QuerySpec& spec, const ColumnTable& source, TableId t) {
  PreparedTable out{filter_unary(source, spec, t), {}, {}};
  for (const auto& p : spec.predicates) {
    if (!p.is_join()) continue;
    for (const auto& c : p.columns()) {
      if (c.table != t || out.columns.contains(c.column)) continue;
      out.columns.emplace(c.column, out.filtered.compact(source.column(c.column).name()));
    }
    if (const Comparison* eq = p.equi_join()) {
      for (const Operand* side : {&eq->lhs, &eq->rhs}) {
        const auto& c = std::get<ColumnRef>(*side);
        if (c.table == t && !out.indexes.contains(c.column)) out.indexes.emplace(c.column, HashIndex(out.columns.at(c.column)));
      }
    }
  }
  return out;
}

}  // namespace

PreparedQuery preprocess_c(const QuerySpec& spec, const Catalog& catalog, PrepareOptions options) {
  PreparedQuery prepared(spec);
  const std::size_t m = spec.table_count();
  std::vector<const ColumnTable*> sources;
  for (const auto& ref : spec.tables) {
    if (!catalog.contains(ref.table)) throw Error("unknown table '" + ref.table + "'");
    sources.push_back(&catalog.table(ref.table));
  }
  for (const auto& p : spec.predicates) {
    for (const auto& c : p.columns()) {
      if (c.table >= m || c.column >= sources[c.table]->column_count()) {
        throw Error("predicate references missing column '" + c.name + "'");
      }
    }
  }
  std::vector<PreparedTable> pieces;
  pieces.reserve(m);
  if (options.parallel && m > 1) {
    std::vector<std::future<PreparedTable>> futures;
    for (TableId t = 0; t < m; ++t) {
      futures.push_back(std::async(std::launch::async, prepare_table, std::cref(spec), std::cref(*sources[t]), t));
    }
    for (auto& f : futures) pieces.push_back(f.get());
  } else {
    for (TableId t = 0; t < m; ++t) pieces.push_back(prepare_table(spec, *sources[t], t));
  }
  for (auto& piece : pieces) {
    prepared.tables_.push_back(std::move(piece.filtered));
    prepared.columns_.push_back(std::move(piece.columns));
    prepared.indexes_.push_back(std::move(piece.indexes));
  }
  return prepared;
}

OrderPlan::OrderPlan(const PreparedQuery& prepared, JoinOrder order) : order_(std::move(order)) {
  const QuerySpec& spec = prepared.spec();
  if (!order_.is_permutation_of(spec.table_count())) throw Error("join order is not a permutation of the query tables");
  for (std::size_t i = 0; i < order_.size(); ++i) {
    Position pos{order_[i], {}, {}};
    for (std::size_t p : newly_applicable(spec, order_, i)) {
      const Predicate& pred = spec.predicates[p];
      pos.predicates.push_back(&pred);
      if (const Comparison* eq = pred.equi_join()) {
        const auto& l = std::get<ColumnRef>(eq->lhs);
        const auto& r = std::get<ColumnRef>(eq->rhs);
        const ColumnRef& self = l.table == pos.table ? l : r;
        const ColumnRef& other = l.table == pos.table ? r : l;
        pos.probes.push_back({prepared.index(self.table, self.column), other.table,
                              prepared.column(other.table, other.column)});
      }
    }
    positions_.push_back(std::move(pos));
  }
}

std::size_t ResultSet::Hash::operator()(const std::vector<std::uint32_t>& v) const {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  for (std::uint32_t x : v) h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

bool ResultSet::insert(std::span<const std::size_t> indices) {
  return set_.emplace(indices.begin(), indices.end()).second;
}

bool ResultSet::contains(std::span<const std::size_t> indices) const {
  return set_.contains(std::vector<std::uint32_t>(indices.begin(), indices.end()));
}

std::vector<std::vector<std::uint32_t>> ResultSet::sorted() const {
  std::vector<std::vector<std::uint32_t>> out(set_.begin(), set_.end());
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

/// Smallest index >= from present in every probed posting list; `card` if none.
std::size_t seek(const OrderPlan::Position& pos, const ExecutionState& state, std::size_t from, std::size_t card) {
  std::vector<std::span<const std::uint32_t>> lists;
  lists.reserve(pos.probes.size());
  for (const auto& probe : pos.probes) {
    lists.push_back(probe.index->probe(probe.other_column->value(state.indices[probe.other])));
    if (lists.back().empty()) return card;
  }
  std::size_t x = from;
  while (true) {
    bool moved = false;
    for (const auto& list : lists) {
      auto it = std::lower_bound(list.begin(), list.end(), x);
      if (it == list.end()) return card;
      if (*it > x) {
        x = *it;
        moved = true;
      }
    }
    if (!moved) return x;
  }
}

void advance(const PreparedQuery& prepared, const JoinOrder& order, const OrderPlan* plan,
             const OffsetVector& offsets, ExecutionState& state, std::span<std::uint64_t> deltas) {
  std::size_t d = state.depth;
  while (true) {
    const TableId t = order[d];
    const std::size_t card = prepared.cardinality(t);
    const std::size_t old = state.indices[t];
    std::size_t next = old + 1;
    if (plan != nullptr && old < card && !plan->position(d).probes.empty()) {
      next = seek(plan->position(d), state, old + 1, card);
    }
    if (old < card && !deltas.empty()) deltas[d] += std::min(next, card) - old;
    if (next < card) {
      state.indices[t] = next;
      break;
    }
    if (d == 0) {
      state.indices[t] = card;
      state.depth = ExecutionState::kDone;
      return;
    }
    state.indices[t] = offsets[t];
    --d;
  }
  state.depth = d;
  for (std::size_t i = d + 1; i < order.size(); ++i) state.indices[order[i]] = offsets[order[i]];
}

}  // namespace

void next_tuple(const PreparedQuery& prepared, const JoinOrder& order, const OffsetVector& offsets,
                ExecutionState& state, std::span<std::uint64_t> deltas) {
  if (state.done()) return;
  advance(prepared, order, nullptr, offsets, state, deltas);
}

void next_tuple_indexed(const PreparedQuery& prepared, const OrderPlan& plan, const OffsetVector& offsets,
                        ExecutionState& state, std::span<std::uint64_t> deltas) {
  if (state.done()) return;
  advance(prepared, plan.order(), &plan, offsets, state, deltas);
}

JoinExecutor::JoinExecutor(const PreparedQuery& prepared, bool use_indexes)
    : prepared_(&prepared), use_indexes_(use_indexes) {}

const OrderPlan& JoinExecutor::plan(const JoinOrder& order) {
  auto it = plans_.find(order);
  if (it == plans_.end()) it = plans_.emplace(order, OrderPlan(*prepared_, order)).first;
  return it->second;
}

bool JoinExecutor::satisfies(const OrderPlan::Position& pos, const ExecutionState& state) const {
  for (const Predicate* p : pos.predicates) {
    const bool ok = evaluate(*p, [&](const ColumnRef& c) {
      return prepared_->column(c.table, c.column)->value(state.indices[c.table]);
    });
    if (!ok) return false;
  }
  return true;
}

SliceOutcome JoinExecutor::continue_join(const JoinOrder& order, const OffsetVector& offsets, std::uint64_t budget,
                                         ExecutionState& state, ResultSet& results) {
  const OrderPlan& p = plan(order);
  const std::size_t m = order.size();
  SliceOutcome out;
  out.deltas.assign(m, 0);
  if (state.done()) {
    out.finished = true;
    return out;
  }
  const TableId lead = order[0];
  bool empty = false;
  for (TableId t = 0; t < m; ++t) empty = empty || prepared_->cardinality(t) == 0;
  if (empty || state.indices[lead] >= prepared_->cardinality(lead)) {
    state.indices[lead] = prepared_->cardinality(lead);
    state.depth = ExecutionState::kDone;
    out.finished = true;
    return out;
  }
  const OrderPlan* indexed = use_indexes_ ? &p : nullptr;
  while (out.iterations < budget) {
    ++out.iterations;
    const std::size_t d = state.depth;
    const TableId t = order[d];
    if (state.indices[t] >= prepared_->cardinality(t)) {
      advance(*prepared_, order, indexed, offsets, state, out.deltas);
    } else if (satisfies(p.position(d), state)) {
      ++out.examined;
      if (d + 1 == m) {
        results.insert(state.indices);
        advance(*prepared_, order, indexed, offsets, state, out.deltas);
      } else {
        state.depth = d + 1;
        const auto& next = p.position(d + 1);
        const std::size_t card = prepared_->cardinality(next.table);
        const std::size_t cur = state.indices[next.table];
        if (indexed != nullptr && !next.probes.empty() && cur < card) {
          const std::size_t x = seek(next, state, cur, card);
          out.deltas[d + 1] += x - cur;
          state.indices[next.table] = x;
        }
      }
    } else {
      advance(*prepared_, order, indexed, offsets, state, out.deltas);
    }
    if (state.done()) {
      out.finished = true;
      break;
    }
  }
  return out;
}

TupleList to_source_tuples(const PreparedQuery& prepared, const ResultSet& results) {
  TupleList out = results.sorted();
  for (auto& tuple : out) {
    for (TableId t = 0; t < tuple.size(); ++t) tuple[t] = prepared.table(t).source_row(tuple[t]);
  }
  return out;
}

RunResult skinner_c(const QuerySpec& spec, const Catalog& catalog, const SkinnerCOptions& options) {
  const PreparedQuery prepared = preprocess_c(spec, catalog, {options.parallel_preprocess});
  const std::size_t m = spec.table_count();
  JoinExecutor executor(prepared, options.use_indexes);
  UctTree tree(prepared.graph(), options.w);
  ProgressStore store(m);
  OffsetVector offsets(m, 0);
  ResultSet results(m);
  Rng rng(options.seed);
  std::vector<JoinOrder> all_orders;
  if (options.policy != OrderPolicy::kUct) all_orders = enumerate_join_orders(prepared.graph());

  RunResult run;
  run.stats.strategy = "skinner-c";
  std::vector<std::uint64_t> cards(m);
  const std::uint64_t budget = std::max<std::uint64_t>(options.budget, 1);
  while (true) {
    JoinOrder order;
    switch (options.policy) {
      case OrderPolicy::kUct: order = tree.select(rng); break;
      case OrderPolicy::kRoundRobin: order = all_orders[run.stats.slices % all_orders.size()]; break;
      case OrderPolicy::kRandom: order = all_orders[rng.uniform(all_orders.size())]; break;
    }
    ExecutionState state = store.restore(order, offsets);
    const SliceOutcome slice = executor.continue_join(order, offsets, budget, state, results);
    for (std::size_t i = 0; i < m; ++i) cards[i] = prepared.cardinality(order[i]);
    const double reward = scaled_delta_reward(slice.deltas, cards);
    if (options.policy == OrderPolicy::kUct) tree.update(order, reward);
    store.backup(order, state, offsets);
    run.stats.examined_tuples += slice.examined;
    run.stats.iterations += slice.iterations;
    run.stats.record_slice(describe(order, spec), spec.tables[order[0]].alias, reward, tree.node_count());
    if (slice.finished) break;
  }
  run.tuples = to_source_tuples(prepared, results);
  run.result_set_size = results.size();
  run.result = finalize_result(spec, catalog, run.tuples);
  run.stats.result_rows = results.size();
  run.stats.progress_nodes = store.node_count();
  run.stats.result_index_bytes = results.index_bytes();
  return run;
}

FixedRunResult execute_fixed_order(const PreparedQuery& prepared, const JoinOrder& order,
                                   const FixedOrderOptions& options) {
  const std::size_t m = prepared.table_count();
  JoinExecutor executor(prepared, options.use_indexes);
  executor.plan(order);
  const OffsetVector offsets(m, 0);
  ExecutionState state = ExecutionState::fresh(offsets);
  ResultSet results(m);
  FixedRunResult out;
  constexpr std::uint64_t kChunk = 1 << 14;
  while (true) {
    // One iteration examines at most one tuple, so this chunk cannot overshoot the cap by much.
    const std::uint64_t chunk =
        options.max_examined ? std::min<std::uint64_t>(kChunk, *options.max_examined - out.examined + 1) : kChunk;
    const SliceOutcome slice = executor.continue_join(order, offsets, chunk, state, results);
    out.iterations += slice.iterations;
    out.examined += slice.examined;
    if (slice.finished) {
      out.finished = true;
      break;
    }
    if (options.max_examined && out.examined > *options.max_examined) break;
  }
  out.tuples = to_source_tuples(prepared, results);
  return out;
}

}  // namespace uctjoin
