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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "uctjoin/common.hpp"
#include "uctjoin/storage.hpp"

namespace uctjoin {

/// A resolved column of one query table.
struct ColumnRef {
  TableId table = 0;
  std::size_t column = 0;  ///< index into the source table's columns
  std::string name;
  ColumnType type = ColumnType::kInt64;

  bool operator==(const ColumnRef& o) const { return table == o.table && column == o.column; }
};

using Operand = std::variant<ColumnRef, Value>;

enum class CompareOp { kEq, kNe, kLt, kGt, kLe, kGe };

std::string_view to_string(CompareOp op);
bool holds(CompareOp op, std::strong_ordering cmp);

struct Comparison {
  Operand lhs;
  CompareOp op = CompareOp::kEq;
  Operand rhs;
};

/// Builtin deterministic predicates over int columns.
enum class UdfKind {
  kAlwaysTrue,
  kAlwaysFalse,
  kModEq,  ///< `mod_eq_<k>(x, y, ...)`: all arguments congruent modulo k
};

struct UdfCall {
  UdfKind kind = UdfKind::kAlwaysTrue;
  std::int64_t modulus = 0;
  std::string name;
  std::vector<ColumnRef> args;
};

/// Resolves a registered UDF name; nullopt for unknown names.
std::optional<UdfCall> lookup_udf(std::string_view name);
bool evaluate_udf(UdfKind kind, std::int64_t modulus, std::span<const std::int64_t> args);

struct Predicate {
  std::variant<Comparison, UdfCall> body;
  TableSet footprint;

  bool is_unary() const { return footprint.size() == 1; }
  bool is_join() const { return footprint.size() >= 2; }
  /// Non-null iff this is a column = column comparison across two tables.
  const Comparison* equi_join() const;
  std::vector<ColumnRef> columns() const;
};

/// Computes a predicate footprint from its operands.
TableSet footprint_of(const std::variant<Comparison, UdfCall>& body);

/// Evaluates `p`; `lookup` maps each referenced ColumnRef to its current ValueView.
template <typename Lookup>
bool evaluate(const Predicate& p, Lookup&& lookup) {
  if (const auto* cmp = std::get_if<Comparison>(&p.body)) {
    auto side = [&](const Operand& o) -> ValueView {
      if (const auto* c = std::get_if<ColumnRef>(&o)) return lookup(*c);
      return view_of(std::get<Value>(o));
    };
    return holds(cmp->op, compare_values(side(cmp->lhs), side(cmp->rhs)));
  }
  const auto& udf = std::get<UdfCall>(p.body);
  switch (udf.kind) {
    case UdfKind::kAlwaysTrue:
      return true;
    case UdfKind::kAlwaysFalse:
      return false;
    case UdfKind::kModEq:
      break;
  }
  std::optional<std::int64_t> first;
  for (const auto& arg : udf.args) {
    const std::int64_t x = std::get<std::int64_t>(lookup(arg));
    const std::int64_t r = ((x % udf.modulus) + udf.modulus) % udf.modulus;
    if (!first) {
      first = r;
    } else if (*first != r) {
      return false;
    }
  }
  return true;
}

struct TableRef {
  std::string table;
  std::string alias;
};

enum class Aggregate { kNone, kCount, kSum, kMin, kMax };

struct SelectList {
  bool star = false;
  bool distinct = false;
  std::vector<ColumnRef> columns;
  Aggregate aggregate = Aggregate::kNone;
  std::optional<ColumnRef> aggregate_column;  ///< empty for COUNT(*)
};

/// A bound select-project-join query over m table aliases.
struct QuerySpec {
  std::vector<TableRef> tables;
  SelectList select;
  std::vector<Predicate> predicates;
  std::vector<ColumnRef> order_by;

  std::size_t table_count() const { return tables.size(); }
  std::optional<TableId> find_alias(std::string_view alias) const;
  /// Indices of predicates over a single table.
  std::vector<std::size_t> unary_predicates(TableId table) const;
  std::vector<std::size_t> join_predicates() const;
};

/// Parses and binds `text` against the catalog's tables and columns.
/// Throws SqlError on syntax errors and unknown tables, columns or UDFs.
QuerySpec parse_query(std::string_view text, const Catalog& catalog);

/// Canonical SQL text; parse_query(to_sql(q)) reproduces q.
std::string to_sql(const QuerySpec& spec);

/// Tables connected by at least one join predicate. Footprints with three or
/// more tables contribute every pair of their members.
class JoinGraph {
 public:
  explicit JoinGraph(std::size_t table_count);
  static JoinGraph from_query(const QuerySpec& spec);

  void add_edge(TableId a, TableId b);
  std::size_t size() const { return adjacency_.size(); }
  TableSet neighbors(TableId t) const { return adjacency_[t]; }
  bool adjacent(TableId a, TableId b) const { return adjacency_[a].contains(b); }

 private:
  std::vector<TableSet> adjacency_;
};

/// Candidate next tables after `chosen`, avoiding Cartesian products where possible.
TableSet eligible_tables(const JoinGraph& graph, TableSet chosen);

/// A permutation of the query's tables defining a left-deep join sequence.
class JoinOrder {
 public:
  JoinOrder() = default;
  explicit JoinOrder(std::vector<TableId> tables) : tables_(std::move(tables)) {}

  std::size_t size() const { return tables_.size(); }
  TableId operator[](std::size_t position) const { return tables_[position]; }
  const std::vector<TableId>& tables() const { return tables_; }
  auto begin() const { return tables_.begin(); }
  auto end() const { return tables_.end(); }

  bool is_permutation_of(std::size_t table_count) const;
  /// Tables at positions [0, length).
  TableSet prefix(std::size_t length) const;
  /// Position of each table: result[t] = position of t.
  std::vector<std::size_t> positions() const;

  auto operator<=>(const JoinOrder&) const = default;

 private:
  std::vector<TableId> tables_;
};

/// Comma-separated alias names.
std::string describe(const JoinOrder& order, const QuerySpec& spec);
/// Parses "a,b,c" into an order over the query's aliases; throws Error unless it is a permutation.
JoinOrder parse_join_order(std::string_view text, const QuerySpec& spec);
/// Every order reachable by repeatedly picking from eligible_tables, in lexicographic order.
std::vector<JoinOrder> enumerate_join_orders(const JoinGraph& graph);

/// Indices of join predicates that become checkable when order[position] is added:
/// footprint within the prefix up to `position` and containing order[position].
std::vector<std::size_t> newly_applicable(const QuerySpec& spec, const JoinOrder& order,
                                          std::size_t position);

}  // namespace uctjoin
