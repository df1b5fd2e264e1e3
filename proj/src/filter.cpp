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

#include "uctjoin/filter.hpp"

namespace uctjoin {

FilteredTable filter_unary(const ColumnTable& table, const QuerySpec& spec, TableId alias) {
  const auto unary = spec.unary_predicates(alias);
  for (std::size_t p : unary) {
    for (const auto& c : spec.predicates[p].columns()) {
      if (c.column >= table.column_count()) {
        throw Error("table '" + table.name() + "' has no column '" + c.name + "'");
      }
    }
  }
  std::vector<std::uint32_t> rows;
  rows.reserve(table.row_count());
  for (std::size_t r = 0; r < table.row_count(); ++r) {
    bool keep = true;
    for (std::size_t p : unary) {
      if (!evaluate(spec.predicates[p], [&](const ColumnRef& c) { return cell(table, c, r); })) {
        keep = false;
        break;
      }
    }
    if (keep) rows.push_back(static_cast<std::uint32_t>(r));
  }
  return FilteredTable(table, std::move(rows));
}

}  // namespace uctjoin
