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
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "uctjoin/common.hpp"

namespace uctjoin {

enum class ColumnType { kInt64, kString };

std::string_view to_string(ColumnType type);
ColumnType parse_column_type(std::string_view name);

/// Owning cell value.
using Value = std::variant<std::int64_t, std::string>;
/// Non-owning cell value; valid while the producing column lives.
using ValueView = std::variant<std::int64_t, std::string_view>;

ValueView view_of(const Value& v);
Value to_value(ValueView v);
/// Total order within one type; comparing an int with a string throws Error.
std::strong_ordering compare_values(ValueView a, ValueView b);
std::string format_value(ValueView v);

struct ColumnSpec {
  std::string name;
  ColumnType type = ColumnType::kInt64;
};

class Column {
 public:
  Column(std::string name, std::vector<std::int64_t> values);
  Column(std::string name, std::vector<std::string> values);
  static Column empty(std::string name, ColumnType type);

  const std::string& name() const { return name_; }
  ColumnType type() const { return type_; }
  std::size_t size() const;

  const std::vector<std::int64_t>& ints() const { return std::get<std::vector<std::int64_t>>(data_); }
  const std::vector<std::string>& strings() const { return std::get<std::vector<std::string>>(data_); }
  ValueView value(std::size_t row) const;

  /// Copy of the values at the given rows, in the given order.
  Column gather(std::span<const std::uint32_t> rows) const;

 private:
  std::string name_;
  ColumnType type_;
  std::variant<std::vector<std::int64_t>, std::vector<std::string>> data_;
};

/// Immutable named table; all columns have exactly row_count() values.
class ColumnTable {
 public:
  ColumnTable(std::string name, std::vector<Column> columns);

  const std::string& name() const { return name_; }
  std::size_t row_count() const { return row_count_; }
  std::size_t column_count() const { return columns_.size(); }
  const std::vector<Column>& columns() const { return columns_; }
  const Column& column(std::size_t index) const { return columns_.at(index); }
  /// Throws Error for unknown names.
  const Column& column(std::string_view name) const;
  std::optional<std::size_t> find_column(std::string_view name) const;
  std::vector<ColumnSpec> schema() const;

 private:
  std::string name_;
  std::vector<Column> columns_;
  std::size_t row_count_ = 0;
};

/// Named tables shared read-only by every query.
class Catalog {
 public:
  /// Throws Error when a table of the same name exists.
  void add(ColumnTable table);
  bool contains(std::string_view name) const;
  const ColumnTable& table(std::string_view name) const;
  std::vector<std::string> names() const;
  std::size_t size() const { return tables_.size(); }

 private:
  std::map<std::string, std::shared_ptr<const ColumnTable>, std::less<>> tables_;
};

/// Equality-probe index: value -> ascending row indices holding it.
class HashIndex {
 public:
  explicit HashIndex(const Column& column);

  std::span<const std::uint32_t> probe(std::int64_t key) const;
  std::span<const std::uint32_t> probe(std::string_view key) const;
  std::span<const std::uint32_t> probe(ValueView key) const;

  std::size_t distinct_keys() const;
  std::size_t row_count() const { return row_count_; }
  /// Visits (key, postings) pairs in unspecified order.
  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (const auto& [k, rows] : int_postings_) fn(ValueView{k}, std::span<const std::uint32_t>(rows));
    for (const auto& [k, rows] : string_postings_) fn(ValueView{std::string_view(k)}, std::span<const std::uint32_t>(rows));
  }

 private:
  struct StringHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const { return std::hash<std::string_view>{}(s); }
  };
  std::unordered_map<std::int64_t, std::vector<std::uint32_t>> int_postings_;
  std::unordered_map<std::string, std::vector<std::uint32_t>, StringHash, std::equal_to<>> string_postings_;
  std::size_t row_count_ = 0;
};

/// Rows of a source table surviving unary filtering, renumbered densely from 0.
class FilteredTable {
 public:
  FilteredTable(const ColumnTable& source, std::vector<std::uint32_t> rows);
  static FilteredTable all_rows(const ColumnTable& source);

  const ColumnTable& source() const { return *source_; }
  std::span<const std::uint32_t> rows() const { return rows_; }
  std::size_t cardinality() const { return rows_.size(); }
  std::uint32_t source_row(std::uint32_t filtered_index) const { return rows_[filtered_index]; }
  /// Values of a source column restricted to the surviving rows.
  Column compact(std::string_view column) const;

 private:
  const ColumnTable* source_;
  std::vector<std::uint32_t> rows_;
};

/// Reads an RFC-4180 style CSV file (comma delimiter, optional header line).
ColumnTable load_csv(const std::filesystem::path& path, std::string table_name,
                     const std::vector<ColumnSpec>& schema, bool has_header);
/// Same as load_csv, from in-memory text.
ColumnTable parse_csv(std::string_view text, std::string table_name,
                      const std::vector<ColumnSpec>& schema, bool has_header);

HashIndex build_hash_index(const ColumnTable& table, std::string_view column);
/// Posting lists hold filtered (dense) indices.
HashIndex build_hash_index(const FilteredTable& table, std::string_view column);

}  // namespace uctjoin
