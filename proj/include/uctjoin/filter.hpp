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

#include "uctjoin/query.hpp"
#include "uctjoin/storage.hpp"

namespace uctjoin {

/// Rows of `table` satisfying every unary predicate of the query on `alias`.
FilteredTable filter_unary(const ColumnTable& table, const QuerySpec& spec, TableId alias);

/// Value of column `ref` at `row` of the source table.
inline ValueView cell(const ColumnTable& table, const ColumnRef& ref, std::size_t row) {
  return table.column(ref.column).value(row);
}

}  // namespace uctjoin
