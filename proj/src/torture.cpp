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

#include "uctjoin/torture.hpp"

#include <fstream>

#include "uctjoin/manifest.hpp"

namespace uctjoin {

TorturePattern parse_torture_pattern(std::string_view text) {
  if (text == "chain") return TorturePattern::kChain;
  if (text == "star") return TorturePattern::kStar;
  throw Error("unknown torture pattern '" + std::string(text) + "'");
}

TortureMode parse_torture_mode(std::string_view text) {
  if (text == "udf") return TortureMode::kUdf;
  if (text == "correlation") return TortureMode::kCorrelation;
  throw Error("unknown torture mode '" + std::string(text) + "'");
}

namespace {

std::string table_name(std::size_t i) { return "t" + std::to_string(i); }

// Tables joined by predicate i (1-based).
std::pair<std::size_t, std::size_t> edge(const TortureConfig& c, std::size_t i) {
  return c.pattern == TorturePattern::kChain ? std::pair{i, i + 1} : std::pair{std::size_t{1}, i + 1};
}

}  // namespace

TortureInstance make_torture(const TortureConfig& c) {
  if (c.tables < 2) throw Error("torture queries need at least 2 tables");
  if (c.tables > kMaxTables) throw Error("too many tables");
  if (c.rows < 1) throw Error("torture tables need at least 1 row");
  if (c.good < 1 || c.good >= c.tables) {
    throw Error("good predicate position must be in [1, " + std::to_string(c.tables - 1) + "]");
  }
  TortureInstance out;
  const auto [good_left, good_right] = edge(c, c.good);
  for (std::size_t t = 1; t <= c.tables; ++t) {
    std::vector<std::int64_t> a(c.rows), b(c.rows);
    for (std::size_t r = 0; r < c.rows; ++r) {
      if (c.mode == TortureMode::kUdf) {
        a[r] = b[r] = static_cast<std::int64_t>(r);
      } else if (c.pattern == TorturePattern::kChain) {
        // t_i.b = t_{i+1}.a holds everywhere except between t_g and t_{g+1}.
        a[r] = t == good_right ? 2 : 0;
        b[r] = t == good_left ? 1 : 0;
      } else {
        a[r] = t == good_right ? 1 : 0;
        b[r] = 0;
      }
    }
    std::vector<Column> cols;
    cols.emplace_back("a", std::move(a));
    cols.emplace_back("b", std::move(b));
    out.catalog.add(ColumnTable(table_name(t), std::move(cols)));
  }
  out.sql = "SELECT * FROM ";
  for (std::size_t t = 1; t <= c.tables; ++t) out.sql += (t > 1 ? ", " : "") + table_name(t);
  for (std::size_t i = 1; i < c.tables; ++i) {
    const auto [l, r] = edge(c, i);
    out.sql += i == 1 ? " WHERE " : " AND ";
    if (c.mode == TortureMode::kUdf) {
      out.sql += std::string(i == c.good ? "always_false" : "always_true") + "(" + table_name(l) + ".a, " +
                 table_name(r) + ".a)";
    } else if (c.pattern == TorturePattern::kChain) {
      out.sql += table_name(l) + ".b = " + table_name(r) + ".a";
    } else {
      out.sql += table_name(l) + ".a = " + table_name(r) + ".a";
    }
  }
  return out;
}

void write_torture(const TortureConfig& config, const std::filesystem::path& dir) {
  const TortureInstance inst = make_torture(config);
  std::filesystem::create_directories(dir);
  std::vector<ManifestEntry> entries;
  for (const auto& name : inst.catalog.names()) {
    const ColumnTable& table = inst.catalog.table(name);
    std::ofstream out(dir / (name + ".csv"));
    if (!out) throw Error("cannot write '" + (dir / (name + ".csv")).string() + "'");
    out << "a,b\n";
    for (std::size_t r = 0; r < table.row_count(); ++r) {
      out << table.column(0).ints()[r] << ',' << table.column(1).ints()[r] << '\n';
    }
    entries.push_back({name, name + ".csv", true, table.schema()});
  }
  write_manifest(dir / "catalog.json", entries);
  std::ofstream sql(dir / "query.sql");
  if (!sql) throw Error("cannot write '" + (dir / "query.sql").string() + "'");
  sql << inst.sql << "\n";
}

}  // namespace uctjoin
