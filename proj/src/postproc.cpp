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

#include "uctjoin/postproc.hpp"

#include <algorithm>
#include <set>

namespace uctjoin {

std::string column_label(const QuerySpec& spec, const ColumnRef& ref) {
  return spec.tables.at(ref.table).alias + "." + ref.name;
}

QueryResult materialize(const QuerySpec& spec, const Catalog& catalog, const TupleList& tuples) {
  QueryResult out;
  std::vector<const ColumnTable*> tables;
  for (const auto& ref : spec.tables) {
    tables.push_back(&catalog.table(ref.table));
    for (const auto& col : tables.back()->columns()) out.columns.push_back(ref.alias + "." + col.name());
  }
  out.rows.reserve(tuples.size());
  for (const auto& tuple : tuples) {
    Row row;
    row.reserve(out.columns.size());
    for (std::size_t t = 0; t < tables.size(); ++t) {
      for (const auto& col : tables[t]->columns()) row.push_back(to_value(col.value(tuple.at(t))));
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

namespace {

std::size_t column_index(const QueryResult& r, const std::string& name) {
  auto it = std::find(r.columns.begin(), r.columns.end(), name);
  if (it == r.columns.end()) throw Error("unknown column '" + name + "'");
  return static_cast<std::size_t>(it - r.columns.begin());
}

}  // namespace

QueryResult order_rows(QueryResult in, std::span<const std::string> keys) {
  std::vector<std::size_t> idx;
  for (const auto& k : keys) idx.push_back(column_index(in, k));
  if (idx.empty()) return in;
  std::stable_sort(in.rows.begin(), in.rows.end(), [&](const Row& a, const Row& b) {
    for (std::size_t i : idx) {
      auto c = compare_values(view_of(a[i]), view_of(b[i]));
      if (c != 0) return c < 0;
    }
    return false;
  });
  return in;
}

QueryResult project_rows(const QueryResult& in, const SelectList& select, const QuerySpec& spec) {
  if (select.star) return in;
  QueryResult out;
  if (select.aggregate != Aggregate::kNone) {
    if (select.aggregate == Aggregate::kCount) {
      out.columns = {"COUNT(*)"};
      out.rows.push_back(Row{static_cast<std::int64_t>(in.rows.size())});
      return out;
    }
    const std::string label = column_label(spec, select.aggregate_column.value());
    const std::size_t c = column_index(in, label);
    if (select.aggregate == Aggregate::kSum) {
      out.columns = {"SUM(" + label + ")"};
      std::int64_t sum = 0;
      for (const auto& row : in.rows) sum += std::get<std::int64_t>(row[c]);
      out.rows.push_back(Row{sum});
      return out;
    }
    const bool is_min = select.aggregate == Aggregate::kMin;
    out.columns = {(is_min ? "MIN(" : "MAX(") + label + ")"};
    const Row* best = nullptr;
    for (const auto& row : in.rows) {
      if (best == nullptr) {
        best = &row;
        continue;
      }
      auto cmp = compare_values(view_of(row[c]), view_of((*best)[c]));
      if (is_min ? cmp < 0 : cmp > 0) best = &row;
    }
    if (best != nullptr) out.rows.push_back(Row{(*best)[c]});
    return out;
  }
  std::vector<std::size_t> idx;
  for (const auto& col : select.columns) {
    out.columns.push_back(column_label(spec, col));
    idx.push_back(column_index(in, out.columns.back()));
  }
  std::set<Row> seen;
  for (const auto& row : in.rows) {
    Row projected;
    projected.reserve(idx.size());
    for (std::size_t i : idx) projected.push_back(row[i]);
    if (select.distinct && !seen.insert(projected).second) continue;
    out.rows.push_back(std::move(projected));
  }
  return out;
}

QueryResult finalize_result(const QuerySpec& spec, const Catalog& catalog, const TupleList& tuples) {
  QueryResult full = materialize(spec, catalog, tuples);
  std::vector<std::string> keys;
  for (const auto& c : spec.order_by) keys.push_back(column_label(spec, c));
  full = order_rows(std::move(full), keys);
  return project_rows(full, spec.select, spec);
}

namespace {

std::string csv_field(const Value& v) {
  std::string s = format_value(view_of(v));
  if (std::holds_alternative<std::int64_t>(v) || s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  return out + "\"";
}

}  // namespace

std::string format_result(const QueryResult& result) {
  std::string out;
  for (std::size_t i = 0; i < result.columns.size(); ++i) out += (i ? "," : "") + result.columns[i];
  out += "\n";
  for (const auto& row : result.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_field(row[i]);
    out += "\n";
  }
  return out;
}

}  // namespace uctjoin
