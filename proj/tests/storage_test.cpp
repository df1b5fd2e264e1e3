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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "uctjoin/storage.hpp"

namespace uctjoin {
namespace {

const std::vector<ColumnSpec> kSchema = {{"id", ColumnType::kInt64}, {"name", ColumnType::kString}};

TEST(Csv, ParsesHeaderQuotesAndCrlf) {
  const ColumnTable t = parse_csv("id,name\r\n1,\"a,b\"\r\n-2,\"say \"\"hi\"\"\"\r\n+3,plain\n", "t", kSchema, true);
  ASSERT_EQ(t.row_count(), 3u);
  EXPECT_EQ(t.column("id").ints(), (std::vector<std::int64_t>{1, -2, 3}));
  EXPECT_EQ(t.column("name").strings(), (std::vector<std::string>{"a,b", "say \"hi\"", "plain"}));
}

TEST(Csv, SkipsBlankLinesAndAllowsEmptyTable) {
  EXPECT_EQ(parse_csv("1,x\n\n2,y\n", "t", kSchema, false).row_count(), 2u);
  EXPECT_EQ(parse_csv("id,name\n", "t", kSchema, true).row_count(), 0u);
  EXPECT_EQ(parse_csv("", "t", kSchema, false).row_count(), 0u);
}

TEST(Csv, ReportsRowOfTypeError) {
  try {
    parse_csv("id,name\n1,a\nzz,b\n", "t", kSchema, true);
    FAIL() << "expected CsvError";
  } catch (const CsvError& e) {
    EXPECT_EQ(e.row(), 2u);
    EXPECT_NE(std::string(e.what()).find("cannot parse 'zz'"), std::string::npos);
  }
}

TEST(Csv, ReportsArityMismatch) {
  try {
    parse_csv("1,a,extra\n", "t", kSchema, false);
    FAIL() << "expected CsvError";
  } catch (const CsvError& e) {
    EXPECT_EQ(e.row(), 1u);
  }
  EXPECT_THROW(parse_csv("1,\"open\n", "t", kSchema, false), CsvError);
}

TEST(Csv, LoadAddsFileContext) {
  const auto path = std::filesystem::temp_directory_path() / "uctjoin_storage_bad.csv";
  {
    std::ofstream(path) << "id,name\n1,a\n2\n";
  }
  try {
    load_csv(path, "t", kSchema, true);
    FAIL() << "expected CsvError";
  } catch (const CsvError& e) {
    EXPECT_EQ(e.row(), 2u);
    const std::string msg = e.what();
    EXPECT_NE(msg.find(path.string()), std::string::npos);
    EXPECT_EQ(msg.find("(row 2) (row 2)"), std::string::npos);
  }
  std::filesystem::remove(path);
  EXPECT_THROW(load_csv(path, "t", kSchema, true), CsvError);
}

TEST(ColumnTable, RejectsRaggedAndDuplicateColumns) {
  std::vector<Column> ragged;
  ragged.emplace_back("a", std::vector<std::int64_t>{1, 2});
  ragged.emplace_back("b", std::vector<std::int64_t>{1});
  EXPECT_THROW(ColumnTable("t", std::move(ragged)), Error);
  std::vector<Column> dup;
  dup.emplace_back("a", std::vector<std::int64_t>{1});
  dup.emplace_back("a", std::vector<std::int64_t>{2});
  EXPECT_THROW(ColumnTable("t", std::move(dup)), Error);
}

TEST(Catalog, DuplicateNameIsAnError) {
  Catalog c;
  c.add(parse_csv("1,a\n", "t", kSchema, false));
  EXPECT_THROW(c.add(parse_csv("2,b\n", "t", kSchema, false)), Error);
  EXPECT_TRUE(c.contains("t"));
  EXPECT_THROW(c.table("missing"), Error);
}

TEST(HashIndex, PostingsAscendingPerKey) {
  const ColumnTable t = parse_csv("5,a\n7,b\n5,a\n9,c\n5,b\n", "t", kSchema, false);
  const HashIndex ids = build_hash_index(t, "id");
  const auto five = ids.probe(std::int64_t{5});
  EXPECT_EQ(std::vector<std::uint32_t>(five.begin(), five.end()), (std::vector<std::uint32_t>{0, 2, 4}));
  EXPECT_TRUE(ids.probe(std::int64_t{6}).empty());
  EXPECT_EQ(ids.distinct_keys(), 3u);
  const HashIndex names = build_hash_index(t, "name");
  EXPECT_EQ(names.probe(std::string_view("b")).size(), 2u);
}

TEST(FilteredTable, IndexesAreDense) {
  const ColumnTable t = parse_csv("5,a\n7,b\n5,a\n9,c\n", "t", kSchema, false);
  const FilteredTable f(t, {1, 2});
  EXPECT_EQ(f.cardinality(), 2u);
  EXPECT_EQ(f.source_row(1), 2u);
  EXPECT_EQ(f.compact("id").ints(), (std::vector<std::int64_t>{7, 5}));
  const HashIndex idx = build_hash_index(f, "id");
  const auto five = idx.probe(std::int64_t{5});
  ASSERT_EQ(five.size(), 1u);
  EXPECT_EQ(five[0], 1u);
  EXPECT_THROW(FilteredTable(t, {2, 1}), Error);
  EXPECT_THROW(FilteredTable(t, {4}), Error);
}

TEST(Values, CompareWithinTypeOnly) {
  EXPECT_TRUE(compare_values(std::int64_t{1}, std::int64_t{2}) < 0);
  EXPECT_TRUE(compare_values(std::string_view("b"), std::string_view("a")) > 0);
  EXPECT_THROW(compare_values(std::int64_t{1}, std::string_view("a")), Error);
}

}  // namespace
}  // namespace uctjoin
