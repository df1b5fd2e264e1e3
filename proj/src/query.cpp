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

#include "uctjoin/query.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <functional>

namespace uctjoin {

std::string_view to_string(CompareOp op) {
  switch (op) {
    case CompareOp::kEq: return "=";
    case CompareOp::kNe: return "<>";
    case CompareOp::kLt: return "<";
    case CompareOp::kGt: return ">";
    case CompareOp::kLe: return "<=";
    case CompareOp::kGe: return ">=";
  }
  return "?";
}

bool holds(CompareOp op, std::strong_ordering cmp) {
  switch (op) {
    case CompareOp::kEq: return cmp == 0;
    case CompareOp::kNe: return cmp != 0;
    case CompareOp::kLt: return cmp < 0;
    case CompareOp::kGt: return cmp > 0;
    case CompareOp::kLe: return cmp <= 0;
    case CompareOp::kGe: return cmp >= 0;
  }
  return false;
}

std::optional<UdfCall> lookup_udf(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  UdfCall call;
  call.name = lower;
  if (lower == "always_true") {
    call.kind = UdfKind::kAlwaysTrue;
    return call;
  }
  if (lower == "always_false") {
    call.kind = UdfKind::kAlwaysFalse;
    return call;
  }
  constexpr std::string_view kModPrefix = "mod_eq_";
  if (lower.starts_with(kModPrefix)) {
    std::string_view digits = std::string_view(lower).substr(kModPrefix.size());
    std::int64_t k = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (!digits.empty() && ec == std::errc() && ptr == digits.data() + digits.size() && k >= 1) {
      call.kind = UdfKind::kModEq;
      call.modulus = k;
      return call;
    }
  }
  return std::nullopt;
}

bool evaluate_udf(UdfKind kind, std::int64_t modulus, std::span<const std::int64_t> args) {
  switch (kind) {
    case UdfKind::kAlwaysTrue: return true;
    case UdfKind::kAlwaysFalse: return false;
    case UdfKind::kModEq: break;
  }
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (((args[i] % modulus) + modulus) % modulus != ((args[0] % modulus) + modulus) % modulus) return false;
  }
  return true;
}

const Comparison* Predicate::equi_join() const {
  const auto* cmp = std::get_if<Comparison>(&body);
  if (cmp == nullptr || cmp->op != CompareOp::kEq || footprint.size() != 2) return nullptr;
  if (!std::holds_alternative<ColumnRef>(cmp->lhs) || !std::holds_alternative<ColumnRef>(cmp->rhs)) return nullptr;
  return cmp;
}

std::vector<ColumnRef> Predicate::columns() const {
  std::vector<ColumnRef> out;
  if (const auto* cmp = std::get_if<Comparison>(&body)) {
    if (const auto* c = std::get_if<ColumnRef>(&cmp->lhs)) out.push_back(*c);
    if (const auto* c = std::get_if<ColumnRef>(&cmp->rhs)) out.push_back(*c);
  } else {
    out = std::get<UdfCall>(body).args;
  }
  return out;
}

TableSet footprint_of(const std::variant<Comparison, UdfCall>& body) {
  TableSet fp;
  Predicate probe{body, {}};
  for (const auto& c : probe.columns()) fp.insert(c.table);
  return fp;
}

std::optional<TableId> QuerySpec::find_alias(std::string_view alias) const {
  for (std::size_t i = 0; i < tables.size(); ++i) {
    if (tables[i].alias == alias) return static_cast<TableId>(i);
  }
  return std::nullopt;
}

std::vector<std::size_t> QuerySpec::unary_predicates(TableId table) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < predicates.size(); ++i) {
    if (predicates[i].is_unary() && predicates[i].footprint.contains(table)) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> QuerySpec::join_predicates() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < predicates.size(); ++i) {
    if (predicates[i].is_join()) out.push_back(i);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Tokenizer and recursive-descent parser.

namespace {

enum class Tok { kIdent, kInt, kString, kSymbol, kEnd };

struct Token {
  Tok kind = Tok::kEnd;
  std::string text;
  std::size_t pos = 0;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      out.push_back({Tok::kIdent, std::string(s.substr(start, i - start)), start});
    } else if (std::isdigit(static_cast<unsigned char>(c)) ||
               (c == '-' && i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1])))) {
      ++i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      out.push_back({Tok::kInt, std::string(s.substr(start, i - start)), start});
    } else if (c == '\'') {
      std::string text;
      ++i;
      bool closed = false;
      while (i < s.size()) {
        if (s[i] == '\'') {
          if (i + 1 < s.size() && s[i + 1] == '\'') {
            text.push_back('\'');
            i += 2;
            continue;
          }
          ++i;
          closed = true;
          break;
        }
        text.push_back(s[i++]);
      }
      if (!closed) throw SqlError("unterminated string literal", start);
      out.push_back({Tok::kString, std::move(text), start});
    } else {
      std::string sym(1, c);
      if (i + 1 < s.size()) {
        const std::string two(s.substr(i, 2));
        if (two == "<>" || two == "<=" || two == ">=" || two == "!=") sym = two;
      }
      if (std::string_view(",.()*=<>;").find(c) == std::string_view::npos && sym.size() == 1) {
        throw SqlError(std::string("unexpected character '") + c + "'", start);
      }
      i += sym.size();
      out.push_back({Tok::kSymbol, sym == "!=" ? "<>" : sym, start});
    }
  }
  out.push_back({Tok::kEnd, "", s.size()});
  return out;
}

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
         });
}

bool is_keyword(std::string_view w) {
  for (std::string_view k : {"select", "from", "where", "and", "order", "by", "distinct", "as"}) {
    if (iequals(w, k)) return true;
  }
  return false;
}

// Column reference before resolution.
struct RawColumn {
  std::string alias;  // empty when unqualified
  std::string name;
  std::size_t pos = 0;
};

class Parser {
 public:
  Parser(std::string_view text, const Catalog& catalog) : tokens_(tokenize(text)), catalog_(catalog) {}

  QuerySpec parse() {
    expect_keyword("select");
    parse_select_raw();
    expect_keyword("from");
    parse_tables();
    bind_select();
    if (accept_keyword("where")) {
      do {
        spec_.predicates.push_back(parse_predicate());
      } while (accept_keyword("and"));
    }
    if (accept_keyword("order")) {
      expect_keyword("by");
      do {
        spec_.order_by.push_back(resolve(parse_raw_column()));
      } while (accept_symbol(","));
    }
    accept_symbol(";");
    if (peek().kind != Tok::kEnd) fail("unexpected '" + peek().text + "'");
    return std::move(spec_);
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& advance() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(const std::string& message) const { throw SqlError(message, peek().pos); }
  [[noreturn]] static void fail_at(const std::string& message, std::size_t pos) { throw SqlError(message, pos); }

  bool accept_keyword(std::string_view k) {
    if (peek().kind == Tok::kIdent && iequals(peek().text, k)) {
      advance();
      return true;
    }
    return false;
  }
  void expect_keyword(std::string_view k) {
    if (!accept_keyword(k)) {
      std::string upper(k);
      std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) { return std::toupper(c); });
      fail("expected " + upper);
    }
  }
  bool accept_symbol(std::string_view s) {
    if (peek().kind == Tok::kSymbol && peek().text == s) {
      advance();
      return true;
    }
    return false;
  }
  void expect_symbol(std::string_view s) {
    if (!accept_symbol(s)) fail("expected '" + std::string(s) + "'");
  }
  std::string expect_identifier(std::string_view what) {
    if (peek().kind != Tok::kIdent || is_keyword(peek().text)) fail("expected " + std::string(what));
    return advance().text;
  }

  RawColumn parse_raw_column() {
    RawColumn col;
    col.pos = peek().pos;
    std::string first = expect_identifier("column");
    if (accept_symbol(".")) {
      col.alias = std::move(first);
      col.name = expect_identifier("column name");
    } else {
      col.name = std::move(first);
    }
    return col;
  }

  // The select list is parsed before FROM but resolved after it.
  void parse_select_raw() {
    if (accept_symbol("*")) {
      spec_.select.star = true;
      return;
    }
    if (peek().kind == Tok::kIdent && tokens_[pos_ + 1].kind == Tok::kSymbol && tokens_[pos_ + 1].text == "(") {
      const Token& fn = advance();
      Aggregate agg = Aggregate::kNone;
      if (iequals(fn.text, "count")) agg = Aggregate::kCount;
      else if (iequals(fn.text, "sum")) agg = Aggregate::kSum;
      else if (iequals(fn.text, "min")) agg = Aggregate::kMin;
      else if (iequals(fn.text, "max")) agg = Aggregate::kMax;
      else fail_at("unknown aggregate '" + fn.text + "'", fn.pos);
      spec_.select.aggregate = agg;
      expect_symbol("(");
      if (agg == Aggregate::kCount) {
        expect_symbol("*");
      } else {
        raw_aggregate_ = parse_raw_column();
      }
      expect_symbol(")");
      return;
    }
    spec_.select.distinct = accept_keyword("distinct");
    do {
      raw_select_.push_back(parse_raw_column());
    } while (accept_symbol(","));
  }

  void parse_tables() {
    do {
      const std::size_t pos = peek().pos;
      std::string table = expect_identifier("table name");
      if (!catalog_.contains(table)) fail_at("unknown table '" + table + "'", pos);
      std::string alias = table;
      accept_keyword("as");
      if (peek().kind == Tok::kIdent && !is_keyword(peek().text)) alias = advance().text;
      if (spec_.find_alias(alias)) fail_at("duplicate alias '" + alias + "'", pos);
      if (spec_.tables.size() == kMaxTables) fail_at("too many tables", pos);
      spec_.tables.push_back({std::move(table), std::move(alias)});
    } while (accept_symbol(","));
  }

  void bind_select() {
    for (const auto& raw : raw_select_) spec_.select.columns.push_back(resolve(raw));
    if (raw_aggregate_) {
      ColumnRef c = resolve(*raw_aggregate_);
      if (spec_.select.aggregate == Aggregate::kSum && c.type != ColumnType::kInt64) {
        fail_at("SUM requires an int column", raw_aggregate_->pos);
      }
      spec_.select.aggregate_column = std::move(c);
    }
  }

  ColumnRef resolve(const RawColumn& raw) const {
    std::optional<ColumnRef> found;
    for (std::size_t t = 0; t < spec_.tables.size(); ++t) {
      if (!raw.alias.empty() && spec_.tables[t].alias != raw.alias) continue;
      const ColumnTable& table = catalog_.table(spec_.tables[t].table);
      if (auto idx = table.find_column(raw.name)) {
        if (found) fail_at("ambiguous column '" + raw.name + "'", raw.pos);
        found = ColumnRef{static_cast<TableId>(t), *idx, raw.name, table.column(*idx).type()};
      }
    }
    if (!found) {
      if (!raw.alias.empty() && !spec_.find_alias(raw.alias)) fail_at("unknown table alias '" + raw.alias + "'", raw.pos);
      fail_at("unknown column '" + (raw.alias.empty() ? raw.name : raw.alias + "." + raw.name) + "'", raw.pos);
    }
    return *found;
  }

  Operand parse_operand() {
    const Token& t = peek();
    if (t.kind == Tok::kInt) {
      advance();
      std::int64_t v = 0;
      auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
      if (ec != std::errc() || ptr != t.text.data() + t.text.size()) fail_at("integer literal out of range", t.pos);
      return Value{v};
    }
    if (t.kind == Tok::kString) {
      advance();
      return Value{t.text};
    }
    return resolve(parse_raw_column());
  }

  Predicate parse_predicate() {
    const std::size_t start = peek().pos;
    if (peek().kind == Tok::kIdent && tokens_[pos_ + 1].kind == Tok::kSymbol && tokens_[pos_ + 1].text == "(") {
      const Token& fn = advance();
      auto udf = lookup_udf(fn.text);
      if (!udf) fail_at("unknown UDF '" + fn.text + "'", fn.pos);
      expect_symbol("(");
      do {
        const std::size_t arg_pos = peek().pos;
        ColumnRef arg = resolve(parse_raw_column());
        if (arg.type != ColumnType::kInt64) fail_at("UDF arguments must be int columns", arg_pos);
        udf->args.push_back(std::move(arg));
      } while (accept_symbol(","));
      expect_symbol(")");
      Predicate p{*udf, {}};
      p.footprint = footprint_of(p.body);
      return p;
    }
    Comparison cmp;
    cmp.lhs = parse_operand();
    const Token& op = peek();
    if (op.kind != Tok::kSymbol) fail("expected comparison operator");
    if (op.text == "=") cmp.op = CompareOp::kEq;
    else if (op.text == "<>") cmp.op = CompareOp::kNe;
    else if (op.text == "<") cmp.op = CompareOp::kLt;
    else if (op.text == ">") cmp.op = CompareOp::kGt;
    else if (op.text == "<=") cmp.op = CompareOp::kLe;
    else if (op.text == ">=") cmp.op = CompareOp::kGe;
    else fail("expected comparison operator");
    advance();
    cmp.rhs = parse_operand();
    auto type_of = [](const Operand& o) {
      if (const auto* c = std::get_if<ColumnRef>(&o)) return c->type;
      return std::holds_alternative<std::int64_t>(std::get<Value>(o)) ? ColumnType::kInt64 : ColumnType::kString;
    };
    if (type_of(cmp.lhs) != type_of(cmp.rhs)) fail_at("comparison between int and string", start);
    Predicate p{cmp, {}};
    p.footprint = footprint_of(p.body);
    if (p.footprint.empty()) fail_at("predicate references no table column", start);
    return p;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  const Catalog& catalog_;
  QuerySpec spec_;
  std::vector<RawColumn> raw_select_;
  std::optional<RawColumn> raw_aggregate_;
};

std::string quote(const Value& v) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
  std::string out = "'";
  for (char c : std::get<std::string>(v)) {
    if (c == '\'') out.push_back('\'');
    out.push_back(c);
  }
  return out + "'";
}

}  // namespace

QuerySpec parse_query(std::string_view text, const Catalog& catalog) {
  return Parser(text, catalog).parse();
}

std::string to_sql(const QuerySpec& spec) {
  auto col = [&](const ColumnRef& c) { return spec.tables[c.table].alias + "." + c.name; };
  auto operand = [&](const Operand& o) {
    if (const auto* c = std::get_if<ColumnRef>(&o)) return col(*c);
    return quote(std::get<Value>(o));
  };
  std::string out = "SELECT ";
  const auto& sel = spec.select;
  if (sel.star) {
    out += "*";
  } else if (sel.aggregate != Aggregate::kNone) {
    static constexpr std::string_view kNames[] = {"", "COUNT", "SUM", "MIN", "MAX"};
    out += std::string(kNames[static_cast<int>(sel.aggregate)]) + "(";
    out += sel.aggregate_column ? col(*sel.aggregate_column) : "*";
    out += ")";
  } else {
    if (sel.distinct) out += "DISTINCT ";
    for (std::size_t i = 0; i < sel.columns.size(); ++i) out += (i ? ", " : "") + col(sel.columns[i]);
  }
  out += " FROM ";
  for (std::size_t i = 0; i < spec.tables.size(); ++i) {
    out += (i ? ", " : "") + spec.tables[i].table;
    if (spec.tables[i].alias != spec.tables[i].table) out += " " + spec.tables[i].alias;
  }
  for (std::size_t i = 0; i < spec.predicates.size(); ++i) {
    out += i ? " AND " : " WHERE ";
    const auto& p = spec.predicates[i];
    if (const auto* cmp = std::get_if<Comparison>(&p.body)) {
      out += operand(cmp->lhs) + " " + std::string(to_string(cmp->op)) + " " + operand(cmp->rhs);
    } else {
      const auto& udf = std::get<UdfCall>(p.body);
      out += udf.name + "(";
      for (std::size_t a = 0; a < udf.args.size(); ++a) out += (a ? ", " : "") + col(udf.args[a]);
      out += ")";
    }
  }
  for (std::size_t i = 0; i < spec.order_by.size(); ++i) {
    out += (i ? ", " : " ORDER BY ") + col(spec.order_by[i]);
  }
  return out;
}

JoinGraph::JoinGraph(std::size_t table_count) : adjacency_(table_count) {}

JoinGraph JoinGraph::from_query(const QuerySpec& spec) {
  JoinGraph g(spec.table_count());
  for (const auto& p : spec.predicates) {
    if (!p.is_join()) continue;
    const auto members = p.footprint.members();
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = i + 1; j < members.size(); ++j) g.add_edge(members[i], members[j]);
    }
  }
  return g;
}

void JoinGraph::add_edge(TableId a, TableId b) {
  if (a == b) return;
  adjacency_.at(a).insert(b);
  adjacency_.at(b).insert(a);
}

TableSet eligible_tables(const JoinGraph& graph, TableSet chosen) {
  const TableSet all = TableSet::all(graph.size());
  if (chosen.empty()) return all;
  const TableSet remaining = all - chosen;
  TableSet connected;
  for (TableId t : chosen.members()) connected = connected | graph.neighbors(t);
  connected = connected & remaining;
  return connected.empty() ? remaining : connected;
}

bool JoinOrder::is_permutation_of(std::size_t table_count) const {
  if (tables_.size() != table_count) return false;
  TableSet seen;
  for (TableId t : tables_) {
    if (t >= table_count || seen.contains(t)) return false;
    seen.insert(t);
  }
  return true;
}

TableSet JoinOrder::prefix(std::size_t length) const {
  TableSet s;
  for (std::size_t i = 0; i < length && i < tables_.size(); ++i) s.insert(tables_[i]);
  return s;
}

std::vector<std::size_t> JoinOrder::positions() const {
  std::vector<std::size_t> pos(tables_.size());
  for (std::size_t i = 0; i < tables_.size(); ++i) pos[tables_[i]] = i;
  return pos;
}

std::string describe(const JoinOrder& order, const QuerySpec& spec) {
  std::string out;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i) out += ",";
    out += spec.tables.at(order[i]).alias;
  }
  return out;
}

JoinOrder parse_join_order(std::string_view text, const QuerySpec& spec) {
  std::vector<TableId> tables;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view name = text.substr(start, end - start);
    while (!name.empty() && std::isspace(static_cast<unsigned char>(name.front()))) name.remove_prefix(1);
    while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back()))) name.remove_suffix(1);
    auto id = spec.find_alias(name);
    if (!id) throw Error("invalid join order: unknown alias '" + std::string(name) + "'");
    tables.push_back(*id);
    start = end + 1;
  }
  JoinOrder order(std::move(tables));
  if (!order.is_permutation_of(spec.table_count())) {
    throw Error("invalid join order '" + std::string(text) + "': must list every alias exactly once");
  }
  return order;
}

std::vector<JoinOrder> enumerate_join_orders(const JoinGraph& graph) {
  std::vector<JoinOrder> out;
  std::vector<TableId> current;
  std::function<void(TableSet)> recurse = [&](TableSet chosen) {
    if (current.size() == graph.size()) {
      out.emplace_back(current);
      return;
    }
    for (TableId t : eligible_tables(graph, chosen).members()) {
      current.push_back(t);
      TableSet next = chosen;
      next.insert(t);
      recurse(next);
      current.pop_back();
    }
  };
  recurse(TableSet{});
  return out;
}

std::vector<std::size_t> newly_applicable(const QuerySpec& spec, const JoinOrder& order,
                                          std::size_t position) {
  std::vector<std::size_t> out;
  const TableSet prefix = order.prefix(position + 1);
  const TableId added = order[position];
  for (std::size_t i = 0; i < spec.predicates.size(); ++i) {
    const auto& p = spec.predicates[i];
    if (p.is_join() && p.footprint.contains(added) && p.footprint.is_subset_of(prefix)) out.push_back(i);
  }
  return out;
}

}  // namespace uctjoin
