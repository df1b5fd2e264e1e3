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

#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "uctjoin/query.hpp"

namespace uctjoin {

/// Per-table index of the first tuple not known to be fully joined.
using OffsetVector = std::vector<std::size_t>;

/// Position of one join order in its depth-first enumeration.
struct ExecutionState {
  static constexpr std::size_t kDone = std::numeric_limits<std::size_t>::max();

  std::vector<std::size_t> indices;  ///< one tuple index per table, in alias order
  std::size_t depth = 0;             ///< join-order position being examined, or kDone

  bool done() const { return depth == kDone; }
  static ExecutionState fresh(const OffsetVector& offsets) { return {offsets, 0}; }
  bool operator==(const ExecutionState&) const = default;
};

/// Lexicographic comparison of the index vectors read in `order`'s position
/// order; on equal vectors a deeper (already verified) state is further ahead.
std::strong_ordering compare_states(const ExecutionState& a, const ExecutionState& b, const JoinOrder& order);

/// Smallest position p < prefix_len with s[i] >= s_other[i] for i < p and
/// s[p] > s_other[p] + 1, reading both through `order`. Both orders must share
/// their first prefix_len tables.
std::optional<std::size_t> state_is_ahead(const ExecutionState& s, const ExecutionState& s_other,
                                          const JoinOrder& order, const JoinOrder& other,
                                          std::size_t prefix_len);

/// Saved states of all join orders tried so far, in a trie keyed by order prefix.
class ProgressStore {
 public:
  explicit ProgressStore(std::size_t table_count);

  /// Saves `state` for `order` and advances the left-most table's offset.
  void backup(const JoinOrder& order, const ExecutionState& state, OffsetVector& offsets);
  /// Most advanced safe state for `order`: its own saved state, a state merged
  /// from an order sharing a prefix, or a fresh state at the offsets.
  ExecutionState restore(const JoinOrder& order, const OffsetVector& offsets) const;

  /// Saved state of exactly this order, if any.
  const ExecutionState* stored(const JoinOrder& order) const;
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t state_count() const { return states_; }

 private:
  struct Node {
    std::vector<std::pair<TableId, std::size_t>> children;
    std::optional<ExecutionState> state;
  };
  std::optional<std::size_t> find_child(std::size_t node, TableId table) const;

  std::size_t table_count_;
  std::vector<Node> nodes_;
  std::size_t states_ = 0;
};

}  // namespace uctjoin
