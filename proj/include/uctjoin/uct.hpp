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
#include <span>
#include <vector>

#include "uctjoin/common.hpp"
#include "uctjoin/query.hpp"

namespace uctjoin {

/// UCB1 score of a child. Unvisited children score +infinity.
double uct_score(double child_mean, std::uint64_t child_visits, std::uint64_t parent_visits, double w);

struct UctNode {
  TableSet chosen;                 ///< tables of the prefix this node represents
  std::uint64_t visits = 0;
  double mean = 0.0;
  std::vector<TableId> actions;    ///< eligible next tables, ascending
  std::vector<std::int32_t> children;  ///< node index per action, -1 if not materialized
};

/// Search tree over join-order prefixes. Only the root exists initially and each
/// select() materializes at most one further node.
class UctTree {
 public:
  UctTree(const JoinGraph& graph, double w);

  JoinOrder select(Rng& rng);
  /// Back-propagates `reward` along the materialized part of the path of `order`.
  /// Rewards outside [0, 1] are clamped.
  void update(const JoinOrder& order, double reward);

  std::size_t node_count() const { return nodes_.size(); }
  double w() const { return w_; }
  const UctNode& root() const { return nodes_.front(); }
  /// Node for a prefix, or nullptr when not materialized.
  const UctNode* node(std::span<const TableId> prefix) const;
  const UctNode& child(const UctNode& parent, std::size_t action) const {
    return nodes_[static_cast<std::size_t>(parent.children[action])];
  }

 private:
  std::size_t make_node(TableSet chosen);

  JoinGraph graph_;
  double w_;
  std::vector<UctNode> nodes_;
};

}  // namespace uctjoin
