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

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <unordered_set>
#include <vector>

#include "uctjoin/postproc.hpp"
#include "uctjoin/progress.hpp"
#include "uctjoin/query.hpp"
#include "uctjoin/stats.hpp"
#include "uctjoin/storage.hpp"

namespace uctjoin {

struct PrepareOptions {
  bool parallel = false;  ///< filter and index tables on worker threads
};

/// A query after unary filtering, with hash indexes on equality-join columns.
/// Refers to the catalog's tables, which must outlive it.
class PreparedQuery {
 public:
  const QuerySpec& spec() const { return spec_; }
  std::size_t table_count() const { return tables_.size(); }
  const FilteredTable& table(TableId t) const { return tables_[t]; }
  std::size_t cardinality(TableId t) const { return tables_[t].cardinality(); }
  const JoinGraph& graph() const { return graph_; }

  /// Compacted values of a join column, or nullptr if no join predicate reads it.
  const Column* column(TableId t, std::size_t source_column) const;
  /// Index over filtered indices, or nullptr if the column is in no equality join.
  const HashIndex* index(TableId t, std::size_t source_column) const;
  std::size_t index_count() const;

 private:
  friend PreparedQuery preprocess_c(const QuerySpec&, const Catalog&, PrepareOptions);
  explicit PreparedQuery(QuerySpec spec);

  QuerySpec spec_;
  JoinGraph graph_;
  std::vector<FilteredTable> tables_;
  std::vector<std::map<std::size_t, Column>> columns_;
  std::vector<std::map<std::size_t, HashIndex>> indexes_;
};

/// Applies unary predicates and builds hash indexes on equality-join columns.
PreparedQuery preprocess_c(const QuerySpec& spec, const Catalog& catalog, PrepareOptions options = {});

/// Join predicates and index probes per position of one join order.
class OrderPlan {
 public:
  struct Probe {
    const HashIndex* index;      ///< on the table at this position
    TableId other;               ///< table at an earlier position
    const Column* other_column;  ///< probe value source
  };
  struct Position {
    TableId table;
    std::vector<const Predicate*> predicates;
    std::vector<Probe> probes;
  };

  OrderPlan(const PreparedQuery& prepared, JoinOrder order);

  const JoinOrder& order() const { return order_; }
  const Position& position(std::size_t i) const { return positions_[i]; }
  std::size_t size() const { return positions_.size(); }

 private:
  JoinOrder order_;
  std::vector<Position> positions_;
};

/// Deduplicating set of result index vectors (filtered indices, alias order).
class ResultSet {
 public:
  explicit ResultSet(std::size_t table_count) : table_count_(table_count) {}

  bool insert(std::span<const std::size_t> indices);
  bool contains(std::span<const std::size_t> indices) const;
  std::size_t size() const { return set_.size(); }
  std::size_t index_bytes() const { return set_.size() * table_count_ * sizeof(std::uint32_t); }
  /// All vectors in ascending lexicographic order.
  std::vector<std::vector<std::uint32_t>> sorted() const;

 private:
  struct Hash {
    std::size_t operator()(const std::vector<std::uint32_t>& v) const;
  };
  std::size_t table_count_;
  std::unordered_set<std::vector<std::uint32_t>, Hash> set_;
};

/// Moves `state` to the next partial tuple at its depth, backtracking over
/// exhausted positions. Positions past the new depth are reset to their offsets.
/// `deltas` (per join-order position) accumulates index advances when non-empty.
void next_tuple(const PreparedQuery& prepared, const JoinOrder& order, const OffsetVector& offsets,
                ExecutionState& state, std::span<std::uint64_t> deltas = {});
/// As next_tuple, but jumps to the next index matching every equality probe.
void next_tuple_indexed(const PreparedQuery& prepared, const OrderPlan& plan, const OffsetVector& offsets,
                        ExecutionState& state, std::span<std::uint64_t> deltas = {});

struct SliceOutcome {
  bool finished = false;
  std::vector<std::uint64_t> deltas;  ///< index advances per join-order position
  std::uint64_t iterations = 0;
  std::uint64_t examined = 0;  ///< partial tuples satisfying all predicates at their depth
};

/// Depth-first multiway join holding a single partial tuple.
class JoinExecutor {
 public:
  JoinExecutor(const PreparedQuery& prepared, bool use_indexes);

  /// Runs at most `budget` loop iterations of `order` from `state`.
  SliceOutcome continue_join(const JoinOrder& order, const OffsetVector& offsets, std::uint64_t budget,
                             ExecutionState& state, ResultSet& results);
  const OrderPlan& plan(const JoinOrder& order);

 private:
  bool satisfies(const OrderPlan::Position& pos, const ExecutionState& state) const;

  const PreparedQuery* prepared_;
  bool use_indexes_;
  std::map<JoinOrder, OrderPlan> plans_;
};

/// Source rows of each result vector.
TupleList to_source_tuples(const PreparedQuery& prepared, const ResultSet& results);

enum class OrderPolicy {
  kUct,
  kRoundRobin,  ///< cycles through all Cartesian-avoiding orders, one per slice
  kRandom,      ///< uniform over all Cartesian-avoiding orders
};

struct SkinnerCOptions {
  std::uint64_t budget = 500;
  double w = 1e-6;
  std::uint64_t seed = 42;
  bool use_indexes = true;
  OrderPolicy policy = OrderPolicy::kUct;
  bool parallel_preprocess = false;
};

struct RunResult {
  TupleList tuples;  ///< ascending
  QueryResult result;
  RunStats stats;
  std::size_t result_set_size = 0;
};

/// Learns a join order while executing the query in time slices.
RunResult skinner_c(const QuerySpec& spec, const Catalog& catalog, const SkinnerCOptions& options = {});

struct FixedOrderOptions {
  bool use_indexes = true;
  /// Stop once more tuples than this were examined.
  std::optional<std::uint64_t> max_examined;
};

struct FixedRunResult {
  bool finished = false;
  std::uint64_t iterations = 0;
  std::uint64_t examined = 0;
  TupleList tuples;  ///< ascending; partial when not finished
};

/// Executes a single join order to completion (or until the examined cap).
FixedRunResult execute_fixed_order(const PreparedQuery& prepared, const JoinOrder& order,
                                   const FixedOrderOptions& options = {});

}  // namespace uctjoin
