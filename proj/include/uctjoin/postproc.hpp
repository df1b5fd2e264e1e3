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
#include <string>
#include <vector>

#include "uctjoin/query.hpp"
#include "uctjoin/storage.hpp"

namespace uctjoin {

using Row = std::vector<Value>;

/// Result tuples as source-row numbers, one per table in alias order.
using TupleList = std::vector<std::vector<std::uint32_t>>;

struct QueryResult {
  std::vector<std::string> columns;
  std::vector<Row> rows;
};

/// "alias.column"
std::string column_label(const QuerySpec& spec, const ColumnRef& ref);

/// Full rows: every column of every table, tables in alias order.
QueryResult materialize(const QuerySpec& spec, const Catalog& catalog, const TupleList& tuples);

/// Stable sort by the named columns; ints numerically, strings bytewise.
QueryResult order_rows(QueryResult in, std::span<const std::string> keys);

/// Applies a select list: star, column projection with optional DISTINCT, or
/// one aggregate over all rows. SUM of no rows is 0; MIN and MAX of no rows
/// yield no row.
QueryResult project_rows(const QueryResult& in, const SelectList& select, const QuerySpec& spec);

/// materialize, then ORDER BY, then the select list.
QueryResult finalize_result(const QuerySpec& spec, const Catalog& catalog, const TupleList& tuples);

/// Header line plus one comma-separated line per row.
std::string format_result(const QueryResult& result);

}  // namespace uctjoin
