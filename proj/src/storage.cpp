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

#include "uctjoin/storage.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace uctjoin {

std::string_view to_string(ColumnType type) {
  return type == ColumnType::kInt64 ? "int" : "string";
}

ColumnType parse_column_type(std::string_view name) {
  if (name == "int" || name == "int64" || name == "integer") return ColumnType::kInt64;
  if (name == "string" || name == "str" || name == "text" || name == "utf8") return ColumnType::kString;
  throw Error("unknown column type '" + std::string(name) + "'");
}

ValueView view_of(const Value& v) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return *i;
  return std::string_view(std::get<std::string>(v));
}

Value to_value(ValueView v) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return *i;
  return std::string(std::get<std::string_view>(v));
}

std::strong_ordering compare_values(ValueView a, ValueView b) {
  if (a.index() != b.index()) throw Error("cannot compare int with string");
  if (const auto* i = std::get_if<std::int64_t>(&a)) return *i <=> std::get<std::int64_t>(b);
  const int c = std::get<std::string_view>(a).compare(std::get<std::string_view>(b));
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::string format_value(ValueView v) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
  return std::string(std::get<std::string_view>(v));
}

Column::Column(std::string name, std::vector<std::int64_t> values)
    : name_(std::move(name)), type_(ColumnType::kInt64), data_(std::move(values)) {}

Column::Column(std::string name, std::vector<std::string> values)
    : name_(std::move(name)), type_(ColumnType::kString), data_(std::move(values)) {}

Column Column::empty(std::string name, ColumnType type) {
  if (type == ColumnType::kInt64) return Column(std::move(name), std::vector<std::int64_t>{});
  return Column(std::move(name), std::vector<std::string>{});
}

std::size_t Column::size() const {
  return std::visit([](const auto& v) { return v.size(); }, data_);
}

ValueView Column::value(std::size_t row) const {
  if (type_ == ColumnType::kInt64) return ints()[row];
  return std::string_view(strings()[row]);
}

Column Column::gather(std::span<const std::uint32_t> rows) const {
  return std::visit(
      [&](const auto& src) {
        std::remove_cvref_t<decltype(src)> out;
        out.reserve(rows.size());
        for (std::uint32_t r : rows) out.push_back(src[r]);
        return Column(name_, std::move(out));
      },
      data_);
}

ColumnTable::ColumnTable(std::string name, std::vector<Column> columns)
    : name_(std::move(name)), columns_(std::move(columns)) {
  row_count_ = columns_.empty() ? 0 : columns_.front().size();
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i].size() != row_count_) {
      throw Error("table '" + name_ + "': column '" + columns_[i].name() + "' has " +
                  std::to_string(columns_[i].size()) + " values, expected " +
                  std::to_string(row_count_));
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (columns_[j].name() == columns_[i].name()) {
        throw Error("table '" + name_ + "': duplicate column '" + columns_[i].name() + "'");
      }
    }
  }
}

const Column& ColumnTable::column(std::string_view name) const {
  if (auto idx = find_column(name)) return columns_[*idx];
  throw Error("table '" + name_ + "' has no column '" + std::string(name) + "'");
}

std::optional<std::size_t> ColumnTable::find_column(std::string_view name) const {
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i].name() == name) return i;
  }
  return std::nullopt;
}

std::vector<ColumnSpec> ColumnTable::schema() const {
  std::vector<ColumnSpec> out;
  for (const auto& c : columns_) out.push_back({c.name(), c.type()});
  return out;
}

void Catalog::add(ColumnTable table) {
  std::string name = table.name();
  if (tables_.contains(name)) throw Error("table '" + name + "' already registered");
  tables_.emplace(std::move(name), std::make_shared<const ColumnTable>(std::move(table)));
}

bool Catalog::contains(std::string_view name) const { return tables_.find(name) != tables_.end(); }

const ColumnTable& Catalog::table(std::string_view name) const {
  auto it = tables_.find(name);
  if (it == tables_.end()) throw Error("unknown table '" + std::string(name) + "'");
  return *it->second;
}

std::vector<std::string> Catalog::names() const {
  std::vector<std::string> out;
  for (const auto& [name, _] : tables_) out.push_back(name);
  return out;
}

HashIndex::HashIndex(const Column& column) : row_count_(column.size()) {
  // Rows are visited in ascending order, so every posting list comes out sorted.
  if (column.type() == ColumnType::kInt64) {
    const auto& values = column.ints();
    for (std::size_t r = 0; r < values.size(); ++r) {
      int_postings_[values[r]].push_back(static_cast<std::uint32_t>(r));
    }
  } else {
    const auto& values = column.strings();
    for (std::size_t r = 0; r < values.size(); ++r) {
      auto it = string_postings_.find(std::string_view(values[r]));
      if (it == string_postings_.end()) it = string_postings_.emplace(values[r], std::vector<std::uint32_t>{}).first;
      it->second.push_back(static_cast<std::uint32_t>(r));
    }
  }
}

std::span<const std::uint32_t> HashIndex::probe(std::int64_t key) const {
  auto it = int_postings_.find(key);
  if (it == int_postings_.end()) return {};
  return it->second;
}

std::span<const std::uint32_t> HashIndex::probe(std::string_view key) const {
  auto it = string_postings_.find(key);
  if (it == string_postings_.end()) return {};
  return it->second;
}

std::span<const std::uint32_t> HashIndex::probe(ValueView key) const {
  return std::visit([this](auto k) { return probe(k); }, key);
}

std::size_t HashIndex::distinct_keys() const { return int_postings_.size() + string_postings_.size(); }

FilteredTable::FilteredTable(const ColumnTable& source, std::vector<std::uint32_t> rows)
    : source_(&source), rows_(std::move(rows)) {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i] >= source.row_count() || (i > 0 && rows_[i] <= rows_[i - 1])) {
      throw Error("filtered rows of '" + source.name() + "' must be strictly ascending and in range");
    }
  }
}

FilteredTable FilteredTable::all_rows(const ColumnTable& source) {
  std::vector<std::uint32_t> rows(source.row_count());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = static_cast<std::uint32_t>(i);
  return FilteredTable(source, std::move(rows));
}

Column FilteredTable::compact(std::string_view column) const {
  return source_->column(column).gather(rows_);
}

HashIndex build_hash_index(const ColumnTable& table, std::string_view column) {
  return HashIndex(table.column(column));
}

HashIndex build_hash_index(const FilteredTable& table, std::string_view column) {
  return HashIndex(table.compact(column));
}

namespace {

// Splits CSV text into records of fields, honoring quotes, doubled quotes and CRLF.
class CsvReader {
 public:
  explicit CsvReader(std::string_view text) : text_(text) {}

  bool next(std::vector<std::string>& fields) {
    fields.clear();
    if (pos_ >= text_.size()) return false;
    blank_ = text_[pos_] == '\n' || text_[pos_] == '\r';
    std::string field;
    bool quoted = false;
    bool field_started = false;
    while (pos_ < text_.size()) {
      const char c = text_[pos_++];
      if (quoted) {
        if (c == '"') {
          if (pos_ < text_.size() && text_[pos_] == '"') {
            field.push_back('"');
            ++pos_;
          } else {
            quoted = false;
          }
        } else {
          field.push_back(c);
        }
        continue;
      }
      if (c == '"' && !field_started) {
        quoted = true;
        field_started = true;
      } else if (c == ',') {
        fields.push_back(std::move(field));
        field.clear();
        field_started = false;
      } else if (c == '\n' || c == '\r') {
        if (c == '\r' && pos_ < text_.size() && text_[pos_] == '\n') ++pos_;
        break;
      } else {
        field.push_back(c);
        field_started = true;
      }
    }
    if (quoted) unterminated_ = true;
    fields.push_back(std::move(field));
    return true;
  }

  bool unterminated() const { return unterminated_; }
  bool blank() const { return blank_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  bool unterminated_ = false;
  bool blank_ = false;
};

}  // namespace

ColumnTable parse_csv(std::string_view text, std::string table_name,
                      const std::vector<ColumnSpec>& schema, bool has_header) {
  if (schema.empty()) throw CsvError("table '" + table_name + "': empty schema", 0);
  std::vector<std::vector<std::int64_t>> ints(schema.size());
  std::vector<std::vector<std::string>> strings(schema.size());

  CsvReader reader(text);
  std::vector<std::string> fields;
  bool header_pending = has_header;
  std::size_t row = 0;
  while (reader.next(fields)) {
    if (reader.unterminated()) throw CsvError("unterminated quoted field", row + 1);
    if (reader.blank()) continue;
    if (header_pending) {
      header_pending = false;
      continue;
    }
    ++row;
    if (fields.size() != schema.size()) {
      throw CsvError("expected " + std::to_string(schema.size()) + " fields, found " +
                         std::to_string(fields.size()),
                     row);
    }
    for (std::size_t c = 0; c < schema.size(); ++c) {
      const std::string& f = fields[c];
      if (schema[c].type == ColumnType::kInt64) {
        std::int64_t v = 0;
        const char* begin = f.data();
        const char* end = f.data() + f.size();
        if (begin != end && *begin == '+') ++begin;
        auto [ptr, ec] = std::from_chars(begin, end, v);
        if (f.empty() || ec != std::errc() || ptr != end) {
          throw CsvError("column '" + schema[c].name + "': cannot parse '" + f + "' as int", row);
        }
        ints[c].push_back(v);
      } else {
        strings[c].push_back(f);
      }
    }
  }

  std::vector<Column> columns;
  for (std::size_t c = 0; c < schema.size(); ++c) {
    if (schema[c].type == ColumnType::kInt64) {
      columns.emplace_back(schema[c].name, std::move(ints[c]));
    } else {
      columns.emplace_back(schema[c].name, std::move(strings[c]));
    }
  }
  return ColumnTable(std::move(table_name), std::move(columns));
}

ColumnTable load_csv(const std::filesystem::path& path, std::string table_name,
                     const std::vector<ColumnSpec>& schema, bool has_header) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CsvError("cannot read '" + path.string() + "'", 0);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_csv(buffer.str(), std::move(table_name), schema, has_header);
  } catch (const CsvError& e) {
    throw CsvError(path.string() + ": " + e.detail(), e.row());
  }
}

}  // namespace uctjoin
