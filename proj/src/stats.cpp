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

#include "uctjoin/stats.hpp"

#include <algorithm>
#include <functional>

#include <json.hpp>

namespace uctjoin {

void RunStats::record_slice(const std::string& order, const std::string& first_table, double reward,
                            std::uint64_t tree_nodes) {
  ++slices;
  ++order_visits[order];
  ++per_first_table_visits[first_table];
  tree_nodes_timeline.push_back(tree_nodes);
  slice_log.push_back({order, reward});
  top_order_share = top_share(1);
}

double RunStats::top_share(std::size_t k) const {
  if (slices == 0) return 0.0;
  std::vector<std::uint64_t> counts;
  for (const auto& [order, n] : order_visits) counts.push_back(n);
  std::sort(counts.begin(), counts.end(), std::greater<>());
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < k && i < counts.size(); ++i) sum += counts[i];
  return static_cast<double>(sum) / static_cast<double>(slices);
}

double RunStats::first_table_share(const std::string& alias) const {
  if (slices == 0) return 0.0;
  auto it = per_first_table_visits.find(alias);
  return it == per_first_table_visits.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(slices);
}

std::string to_json(const RunStats& stats) {
  nlohmann::ordered_json doc;
  doc["slices"] = stats.slices;
  doc["result_rows"] = stats.result_rows;
  doc["tree_nodes_timeline"] = stats.tree_nodes_timeline;
  doc["per_first_table_visits"] = stats.per_first_table_visits;
  doc["top_order_share"] = stats.top_order_share;
  doc["examined_tuples"] = stats.examined_tuples;
  doc["progress_nodes"] = stats.progress_nodes;
  doc["result_index_bytes"] = stats.result_index_bytes;
  doc["strategy"] = stats.strategy;
  doc["iterations"] = stats.iterations;
  doc["simulated_units"] = stats.simulated_units;
  doc["order_visits"] = stats.order_visits;
  auto& log = doc["slice_log"] = nlohmann::ordered_json::array();
  for (const auto& s : stats.slice_log) log.push_back({{"order", s.order}, {"reward", s.reward}});
  return doc.dump(2) + "\n";
}

}  // namespace uctjoin
