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

#include "uctjoin/progress.hpp"

#include <algorithm>

namespace uctjoin {

std::strong_ordering compare_states(const ExecutionState& a, const ExecutionState& b, const JoinOrder& order) {
  for (TableId t : order) {
    if (auto c = a.indices[t] <=> b.indices[t]; c != 0) return c;
  }
  return a.depth <=> b.depth;
}

std::optional<std::size_t> state_is_ahead(const ExecutionState& s, const ExecutionState& s_other,
                                          const JoinOrder& order, const JoinOrder& other,
                                          std::size_t prefix_len) {
  for (std::size_t p = 0; p < prefix_len && p < order.size() && p < other.size(); ++p) {
    const TableId t = order[p];
    if (t != other[p]) break;
    if (s.indices[t] > s_other.indices[t] + 1) return p;
    if (s.indices[t] < s_other.indices[t]) break;
  }
  return std::nullopt;
}

ProgressStore::ProgressStore(std::size_t table_count) : table_count_(table_count), nodes_(1) {}

std::optional<std::size_t> ProgressStore::find_child(std::size_t node, TableId table) const {
  for (const auto& [t, index] : nodes_[node].children) {
    if (t == table) return index;
  }
  return std::nullopt;
}

void ProgressStore::backup(const JoinOrder& order, const ExecutionState& state, OffsetVector& offsets) {
  std::size_t current = 0;
  for (TableId t : order) {
    auto next = find_child(current, t);
    if (!next) {
      nodes_.emplace_back();
      next = nodes_.size() - 1;
      nodes_[current].children.emplace_back(t, *next);
    }
    current = *next;
  }
  if (!nodes_[current].state) ++states_;
  nodes_[current].state = state;
  if (!order.tables().empty()) {
    const TableId lead = order[0];
    offsets[lead] = std::max(offsets[lead], state.indices[lead]);
  }
}

const ExecutionState* ProgressStore::stored(const JoinOrder& order) const {
  std::size_t current = 0;
  for (TableId t : order) {
    auto next = find_child(current, t);
    if (!next) return nullptr;
    current = *next;
  }
  return nodes_[current].state ? &*nodes_[current].state : nullptr;
}

ExecutionState ProgressStore::restore(const JoinOrder& order, const OffsetVector& offsets) const {
  ExecutionState best = ExecutionState::fresh(offsets);
  if (order.size() == 0) return best;

  if (const ExecutionState* own = stored(order)) {
    ExecutionState candidate = *own;
    if (!candidate.done()) {
      // Positions past the current depth have not been entered yet.
      for (std::size_t i = candidate.depth + 1; i < order.size(); ++i) candidate.indices[order[i]] = offsets[order[i]];
    }
    if (compare_states(candidate, best, order) > 0) best = std::move(candidate);
  }
  if (best.done()) return best;

  // Fast-forward from orders sharing at least the left-most table.
  auto first = find_child(0, order[0]);
  if (!first) return best;
  const ExecutionState base = best;
  std::vector<TableId> path{order[0]};
  auto visit = [&](auto&& self, std::size_t node, std::size_t shared) -> void {
    const Node& n = nodes_[node];
    if (n.state && path.size() == table_count_ && shared < table_count_) {
      const JoinOrder other(path);
      if (auto p = state_is_ahead(*n.state, base, order, other, shared)) {
        ExecutionState merged = ExecutionState::fresh(offsets);
        for (std::size_t i = 0; i < *p; ++i) merged.indices[order[i]] = n.state->indices[order[i]];
        merged.indices[order[*p]] = n.state->indices[order[*p]] - 1;
        if (compare_states(merged, best, order) > 0) best = std::move(merged);
      }
    }
    for (const auto& [t, child] : n.children) {
      const std::size_t depth = path.size();
      const std::size_t next_shared = (shared == depth && depth < order.size() && order[depth] == t) ? shared + 1 : shared;
      path.push_back(t);
      self(self, child, next_shared);
      path.pop_back();
    }
  };
  visit(visit, *first, 1);
  return best;
}

}  // namespace uctjoin
