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
#include <optional>
#include <vector>

#include "uctjoin/postproc.hpp"
#include "uctjoin/query.hpp"
#include "uctjoin/storage.hpp"

namespace uctjoin {

struct EnumerationResult {
  /// Sum of intermediate result sizes for prefixes of two or more tables.
  std::uint64_t cost = 0;
  bool capped = false;  ///< stopped early because cost exceeded the cap
  TupleList tuples;     ///< results in the order's lexicographic order, if collected
};

/// Brute-force left-deep evaluation of `order` where table t ranges over the
/// source rows in domains[t]. Every predicate, unary ones included, is checked
/// at the position of its last table in the order.
EnumerationResult enumerate_left_deep(const QuerySpec& spec, const Catalog& catalog, const JoinOrder& order,
                                      const std::vector<std::vector<std::uint32_t>>& domains,
                                      std::optional<std::uint64_t> cost_cap, bool collect);

/// All source-row tuples satisfying every predicate, in lexicographic order.
TupleList nested_loop_tuples(const QuerySpec& spec, const Catalog& catalog);
/// Reference result including post-processing.
QueryResult nested_loop_join(const QuerySpec& spec, const Catalog& catalog);

/// Exact C_out cost of a left-deep order. Once the running sum exceeds `cap`
/// evaluation stops and the partial sum (greater than cap) is returned.
std::uint64_t cout_cost(const QuerySpec& spec, const Catalog& catalog, const JoinOrder& order,
                        std::optional<std::uint64_t> cap = std::nullopt);

struct RankedOrder {
  JoinOrder order;
  std::uint64_t cost = 0;
  bool capped = false;  ///< cost is only a lower bound
};

/// Cheapest Cartesian-avoiding order; ties go to the lexicographically first.
RankedOrder optimal_order(const QuerySpec& spec, const Catalog& catalog, std::size_t max_tables = 8);
/// Most expensive Cartesian-avoiding order with costs truncated at `cap`.
RankedOrder worst_order(const QuerySpec& spec, const Catalog& catalog, std::uint64_t cap,
                        std::size_t max_tables = 8);

}  // namespace uctjoin
