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

#include "uctjoin/uct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <spdlog/spdlog.h>

namespace uctjoin {

double uct_score(double child_mean, std::uint64_t child_visits, std::uint64_t parent_visits, double w) {
  if (child_visits == 0 || parent_visits == 0) return std::numeric_limits<double>::infinity();
  return child_mean + w * std::sqrt(std::log(static_cast<double>(parent_visits)) / static_cast<double>(child_visits));
}

UctTree::UctTree(const JoinGraph& graph, double w) : graph_(graph), w_(w) {
  make_node(TableSet{});
}

std::size_t UctTree::make_node(TableSet chosen) {
  UctNode node;
  node.chosen = chosen;
  if (chosen.size() < graph_.size()) node.actions = eligible_tables(graph_, chosen).members();
  node.children.assign(node.actions.size(), -1);
  nodes_.push_back(std::move(node));
  return nodes_.size() - 1;
}

JoinOrder UctTree::select(Rng& rng) {
  const std::size_t m = graph_.size();
  std::vector<TableId> order;
  order.reserve(m);
  std::size_t current = 0;
  std::vector<std::size_t> best;
  while (order.size() < m) {
    const UctNode& node = nodes_[current];
    double best_score = -std::numeric_limits<double>::infinity();
    best.clear();
    for (std::size_t a = 0; a < node.actions.size(); ++a) {
      double score = std::numeric_limits<double>::infinity();
      if (node.children[a] >= 0) {
        const UctNode& c = nodes_[static_cast<std::size_t>(node.children[a])];
        score = uct_score(c.mean, c.visits, node.visits, w_);
      }
      if (score > best_score) {
        best_score = score;
        best.assign(1, a);
      } else if (score == best_score) {
        best.push_back(a);
      }
    }
    const std::size_t action = best.size() == 1 ? best.front() : best[rng.uniform(best.size())];
    const TableId table = node.actions[action];
    order.push_back(table);
    if (node.children[action] >= 0) {
      current = static_cast<std::size_t>(node.children[action]);
      continue;
    }
    TableSet chosen = node.chosen;
    chosen.insert(table);
    const auto index = static_cast<std::int32_t>(make_node(chosen));
    nodes_[current].children[action] = index;
    // Outside the tree: complete uniformly at random.
    while (order.size() < m) {
      const auto candidates = eligible_tables(graph_, chosen).members();
      const TableId next = candidates[rng.uniform(candidates.size())];
      order.push_back(next);
      chosen.insert(next);
    }
  }
  return JoinOrder(std::move(order));
}

void UctTree::update(const JoinOrder& order, double reward) {
  if (!(reward >= 0.0 && reward <= 1.0)) {
    spdlog::warn("uct: reward {} outside [0,1], clamped", reward);
    reward = std::isnan(reward) ? 0.0 : std::clamp(reward, 0.0, 1.0);
  }
  std::size_t current = 0;
  std::size_t depth = 0;
  while (true) {
    UctNode& node = nodes_[current];
    ++node.visits;
    node.mean += (reward - node.mean) / static_cast<double>(node.visits);
    if (depth == order.size()) break;
    auto it = std::lower_bound(node.actions.begin(), node.actions.end(), order[depth]);
    if (it == node.actions.end() || *it != order[depth]) break;
    const std::int32_t next = node.children[static_cast<std::size_t>(it - node.actions.begin())];
    if (next < 0) break;
    current = static_cast<std::size_t>(next);
    ++depth;
  }
}

const UctNode* UctTree::node(std::span<const TableId> prefix) const {
  std::size_t current = 0;
  for (TableId t : prefix) {
    const UctNode& node = nodes_[current];
    auto it = std::lower_bound(node.actions.begin(), node.actions.end(), t);
    if (it == node.actions.end() || *it != t) return nullptr;
    const std::int32_t next = node.children[static_cast<std::size_t>(it - node.actions.begin())];
    if (next < 0) return nullptr;
    current = static_cast<std::size_t>(next);
  }
  return &nodes_[current];
}

}  // namespace uctjoin
