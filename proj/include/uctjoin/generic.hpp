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

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "uctjoin/executor.hpp"
#include "uctjoin/postproc.hpp"
#include "uctjoin/query.hpp"
#include "uctjoin/stats.hpp"
#include "uctjoin/storage.hpp"
#include "uctjoin/uct.hpp"

namespace uctjoin {

/// Half-open range of filtered row indices.
struct BatchRange {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t size() const { return end - begin; }
  bool operator==(const BatchRange&) const = default;
};

/// Splits `rows` rows into min(b, rows) contiguous batches whose sizes differ by at most one.
std::vector<BatchRange> partition_batches(std::size_t rows, std::size_t b);
std::vector<BatchRange> partition_batches(const FilteredTable& filtered, std::size_t b);

/// Pyramid timeout scheme: level l has timeout 2^l and n_l counts the time
/// handed out at that level so far.
class TimeoutLedger {
 public:
  struct Pick {
    std::size_t level = 0;
    std::uint64_t timeout = 1;
  };

  /// Chooses the highest level L with n_l >= n_L + 2^L for all l < L and charges it.
  Pick next_timeout();
  /// The level next_timeout() would choose, without charging it.
  Pick peek() const;

  const std::vector<std::uint64_t>& allocations() const { return n_; }
  std::uint64_t total() const { return total_; }
  std::size_t used_levels() const;

 private:
  std::vector<std::uint64_t> n_;
  std::uint64_t total_ = 0;
};

struct EngineOutcome {
  bool success = false;
  std::uint64_t consumed = 0;  ///< time units spent; the full timeout on failure
  TupleList tuples;            ///< result tuples (source rows, alias order) on success
};

/// A query engine that can only be told a join order and a timeout.
class BlackBoxEngine {
 public:
  virtual ~BlackBoxEngine() = default;
  /// Joins `order` where table t ranges over the source rows domains[t].
  /// Work of a timed-out invocation is lost.
  virtual EngineOutcome execute(const JoinOrder& order, const std::vector<std::vector<std::uint32_t>>& domains,
                                std::uint64_t timeout) = 0;
};

/// Deterministic engine charging alpha units per intermediate result tuple.
class SimulatedEngine final : public BlackBoxEngine {
 public:
  SimulatedEngine(const QuerySpec& spec, const Catalog& catalog, std::uint64_t alpha = 1);

  EngineOutcome execute(const JoinOrder& order, const std::vector<std::vector<std::uint32_t>>& domains,
                        std::uint64_t timeout) override;
  std::uint64_t invocations() const { return invocations_; }

 private:
  const QuerySpec* spec_;
  const Catalog* catalog_;
  std::uint64_t alpha_;
  std::uint64_t invocations_ = 0;
};

struct GenericOptions {
  std::size_t batches = 10;
  double w = std::sqrt(2.0);
  std::uint64_t seed = 42;
};

/// Learning loop driving a black-box engine one batch at a time, with a
/// separate search tree per timeout level.
class GenericLearner {
 public:
  GenericLearner(const QuerySpec& spec, const Catalog& catalog, BlackBoxEngine& engine, GenericOptions options);

  /// Invokes the engine until the query completes or, given a budget, until the
  /// next timeout would exceed what is left of it. Returns units consumed.
  std::uint64_t run(std::optional<std::uint64_t> budget = std::nullopt);

  bool finished() const { return finished_; }
  const TupleList& tuples() const { return tuples_; }
  const RunStats& stats() const { return stats_; }
  const TimeoutLedger& ledger() const { return ledger_; }
  const std::map<std::size_t, UctTree>& trees() const { return trees_; }
  /// Processed batches per table.
  const std::vector<std::size_t>& batch_offsets() const { return offsets_; }
  /// Unary-filtered source rows of each table.
  const std::vector<std::vector<std::uint32_t>>& filtered_rows() const { return rows_; }

 private:
  void step();

  QuerySpec spec_;
  BlackBoxEngine* engine_;
  GenericOptions options_;
  Rng rng_;
  JoinGraph graph_;
  TimeoutLedger ledger_;
  std::map<std::size_t, UctTree> trees_;
  std::vector<std::vector<std::uint32_t>> rows_;
  std::vector<std::vector<BatchRange>> batches_;
  std::vector<std::size_t> offsets_;
  TupleList tuples_;
  RunStats stats_;
  bool finished_ = false;
};

RunResult skinner_g(const QuerySpec& spec, const Catalog& catalog, BlackBoxEngine& engine,
                    const GenericOptions& options = {});

struct HybridResult {
  RunResult run;
  std::uint64_t traditional_units = 0;
  std::uint64_t learned_units = 0;
  std::uint64_t traditional_invocations = 0;
  bool traditional_finished = false;
};

/// Alternates the given order under doubling timeouts with equally long
/// learning episodes until one side completes the query.
HybridResult skinner_h(const QuerySpec& spec, const Catalog& catalog, BlackBoxEngine& engine,
                       const JoinOrder& traditional_order, const GenericOptions& options = {});

}  // namespace uctjoin
