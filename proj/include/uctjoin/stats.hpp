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
#include <string>
#include <vector>

namespace uctjoin {

struct SliceRecord {
  std::string order;  ///< comma-separated aliases
  double reward = 0.0;
};

/// Counters collected over one query execution.
struct RunStats {
  std::string strategy;
  std::uint64_t slices = 0;
  std::uint64_t result_rows = 0;
  std::vector<std::uint64_t> tree_nodes_timeline;  ///< search-tree size after each slice
  std::map<std::string, std::uint64_t> per_first_table_visits;
  double top_order_share = 0.0;
  std::uint64_t examined_tuples = 0;
  std::uint64_t iterations = 0;
  std::uint64_t progress_nodes = 0;
  std::uint64_t result_index_bytes = 0;
  std::uint64_t simulated_units = 0;
  std::map<std::string, std::uint64_t> order_visits;
  std::vector<SliceRecord> slice_log;

  /// Appends one slice and its bookkeeping.
  void record_slice(const std::string& order, const std::string& first_table, double reward,
                    std::uint64_t tree_nodes);
  /// Share of slices spent on the `k` most visited orders.
  double top_share(std::size_t k) const;
  /// Share of slices whose order starts with `alias`.
  double first_table_share(const std::string& alias) const;
};

/// Stable-field JSON document; identical input gives byte-identical output.
std::string to_json(const RunStats& stats);

}  // namespace uctjoin
