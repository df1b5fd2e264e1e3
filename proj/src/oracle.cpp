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

#include "uctjoin/oracle.hpp"

#include <numeric>

#include "uctjoin/filter.hpp"

namespace uctjoin {

namespace {

class Enumerator {
 public:
  Enumerator(const QuerySpec& spec, const Catalog& catalog, const JoinOrder& order,
             const std::vector<std::vector<std::uint32_t>>& domains, std::optional<std::uint64_t> cap, bool collect)
      : spec_(spec), order_(order), domains_(domains), cap_(cap), collect_(collect),
        rows_(spec.table_count(), 0), checks_(order.size()) {
    if (!order.is_permutation_of(spec.table_count())) throw Error("join order is not a permutation of the query tables");
    for (const auto& ref : spec.tables) tables_.push_back(&catalog.table(ref.table));
    const auto pos = order.positions();
    for (const auto& p : spec.predicates) {
      std::size_t last = 0;
      for (TableId t : p.footprint.members()) last = std::max(last, pos[t]);
      checks_[last].push_back(&p);
    }
  }

  EnumerationResult run() {
    if (!order_.tables().empty()) descend(0);
    return std::move(result_);
  }

 private:
  bool passes(std::size_t depth) const {
    for (const Predicate* p : checks_[depth]) {
      if (!evaluate(*p, [&](const ColumnRef& c) { return cell(*tables_[c.table], c, rows_[c.table]); })) return false;
    }
    return true;
  }

  // Returns false once the cap is exceeded.
  bool descend(std::size_t depth) {
    const TableId t = order_[depth];
    for (std::uint32_t row : domains_[t]) {
      rows_[t] = row;
      if (!passes(depth)) continue;
      if (depth >= 1) {
        ++result_.cost;
        if (cap_ && result_.cost > *cap_) {
          result_.capped = true;
          return false;
        }
      }
      if (depth + 1 == order_.size()) {
        if (collect_) result_.tuples.emplace_back(rows_.begin(), rows_.end());
      } else if (!descend(depth + 1)) {
        return false;
      }
    }
    return true;
  }

  const QuerySpec& spec_;
  const JoinOrder& order_;
  const std::vector<std::vector<std::uint32_t>>& domains_;
  std::optional<std::uint64_t> cap_;
  bool collect_;
  std::vector<const ColumnTable*> tables_;
  std::vector<std::uint32_t> rows_;
  std::vector<std::vector<const Predicate*>> checks_;
  EnumerationResult result_;
};

std::vector<std::vector<std::uint32_t>> full_domains(const QuerySpec& spec, const Catalog& catalog) {
  std::vector<std::vector<std::uint32_t>> domains;
  for (const auto& ref : spec.tables) {
    std::vector<std::uint32_t> rows(catalog.table(ref.table).row_count());
    std::iota(rows.begin(), rows.end(), 0U);
    domains.push_back(std::move(rows));
  }
  return domains;
}

JoinOrder identity_order(std::size_t m) {
  std::vector<TableId> ids(m);
  std::iota(ids.begin(), ids.end(), TableId{0});
  return JoinOrder(std::move(ids));
}

}  // namespace

EnumerationResult enumerate_left_deep(const QuerySpec& spec, const Catalog& catalog, const JoinOrder& order,
                                      const std::vector<std::vector<std::uint32_t>>& domains,
                                      std::optional<std::uint64_t> cost_cap, bool collect) {
  return Enumerator(spec, catalog, order, domains, cost_cap, collect).run();
}

TupleList nested_loop_tuples(const QuerySpec& spec, const Catalog& catalog) {
  const auto domains = full_domains(spec, catalog);
  return enumerate_left_deep(spec, catalog, identity_order(spec.table_count()), domains, std::nullopt, true).tuples;
}

QueryResult nested_loop_join(const QuerySpec& spec, const Catalog& catalog) {
  return finalize_result(spec, catalog, nested_loop_tuples(spec, catalog));
}

std::uint64_t cout_cost(const QuerySpec& spec, const Catalog& catalog, const JoinOrder& order,
                        std::optional<std::uint64_t> cap) {
  const auto domains = full_domains(spec, catalog);
  return enumerate_left_deep(spec, catalog, order, domains, cap, false).cost;
}

namespace {

std::vector<JoinOrder> candidate_orders(const QuerySpec& spec, std::size_t max_tables) {
  if (spec.table_count() > max_tables) {
    throw Error("exhaustive order enumeration supports at most " + std::to_string(max_tables) + " tables");
  }
  return enumerate_join_orders(JoinGraph::from_query(spec));
}

}  // namespace

RankedOrder optimal_order(const QuerySpec& spec, const Catalog& catalog, std::size_t max_tables) {
  const auto domains = full_domains(spec, catalog);
  std::optional<RankedOrder> best;
  for (const auto& order : candidate_orders(spec, max_tables)) {
    std::optional<std::uint64_t> cap;
    if (best) cap = best->cost;
    const auto r = enumerate_left_deep(spec, catalog, order, domains, cap, false);
    if (r.capped) continue;
    if (!best || r.cost < best->cost) best = RankedOrder{order, r.cost, false};
  }
  return *best;
}

RankedOrder worst_order(const QuerySpec& spec, const Catalog& catalog, std::uint64_t cap, std::size_t max_tables) {
  const auto domains = full_domains(spec, catalog);
  std::optional<RankedOrder> worst;
  for (const auto& order : candidate_orders(spec, max_tables)) {
    const auto r = enumerate_left_deep(spec, catalog, order, domains, cap, false);
    const std::uint64_t cost = std::min(r.cost, cap);
    if (!worst || cost > worst->cost) worst = RankedOrder{order, cost, r.capped};
  }
  return *worst;
}

}  // namespace uctjoin
