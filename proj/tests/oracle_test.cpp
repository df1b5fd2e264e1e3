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

#include <algorithm>
#include <random>

#include "instances.hpp"
#include "uctjoin/oracle.hpp"
#include "uctjoin/torture.hpp"

namespace uctjoin {
namespace {

using testing::int_catalog;
using testing::make_random_instance;
using testing::sorted_rows;

TEST(NestedLoopJoin, EmptyTableGivesEmptyResult) {
  Catalog c = int_catalog({{"A", {{1, 2}}}, {"B", {std::vector<std::int64_t>{}}}});
  const QuerySpec q = parse_query("SELECT * FROM A, B WHERE A.a = B.a", c);
  EXPECT_TRUE(nested_loop_join(q, c).rows.empty());
}

TEST(NestedLoopJoin, CrossProduct) {
  Catalog c = int_catalog({{"A", {{1, 2}}}, {"B", {{3, 4}}}});
  const QuerySpec q = parse_query("SELECT * FROM A, B", c);
  EXPECT_EQ(nested_loop_join(q, c).rows.size(), 4u);
  EXPECT_EQ(nested_loop_tuples(q, c),
            (TupleList{{0, 0}, {0, 1}, {1, 0}, {1, 1}}));
}

TEST(NestedLoopJoin, ChainEquality) {
  Catalog c = int_catalog({{"A", {{1, 2}}}, {"B", {{2, 2}}}}, {"x"});
  const QuerySpec q = parse_query("SELECT * FROM A a, B b WHERE a.x = b.x", c);
  EXPECT_EQ(nested_loop_tuples(q, c), (TupleList{{1, 0}, {1, 1}}));
}

TEST(NestedLoopJoin, InvariantUnderPredicatePermutation) {
  std::mt19937_64 gen(7);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto inst = make_random_instance(seed);
    QuerySpec shuffled = inst.spec;
    std::shuffle(shuffled.predicates.begin(), shuffled.predicates.end(), gen);
    EXPECT_EQ(nested_loop_tuples(shuffled, inst.catalog), nested_loop_tuples(inst.spec, inst.catalog));
  }
}

TEST(CoutCost, SingleTableIsZero) {
  Catalog c = int_catalog({{"A", {{1, 2, 3}}}});
  const QuerySpec q = parse_query("SELECT * FROM A", c);
  EXPECT_EQ(cout_cost(q, c, JoinOrder({0})), 0u);
}

TEST(CoutCost, CrossProduct) {
  Catalog c = int_catalog({{"A", {{1, 2}}}, {"B", {{3, 4}}}});
  const QuerySpec q = parse_query("SELECT * FROM A, B", c);
  EXPECT_EQ(cout_cost(q, c, JoinOrder({0, 1})), 4u);
  EXPECT_EQ(cout_cost(q, c, JoinOrder({1, 0})), 4u);
}

TEST(CoutCost, TortureChainDependsOnEnd) {
  const TortureInstance t = make_torture({TorturePattern::kChain, 3, 10, TortureMode::kUdf, 1});
  const QuerySpec q = parse_query(t.sql, t.catalog);
  EXPECT_EQ(cout_cost(q, t.catalog, JoinOrder({0, 1, 2})), 0u);
  EXPECT_EQ(cout_cost(q, t.catalog, JoinOrder({2, 1, 0})), 100u);
}

TEST(CoutCost, CapStopsEarly) {
  const TortureInstance t = make_torture({TorturePattern::kChain, 4, 10, TortureMode::kUdf, 1});
  const QuerySpec q = parse_query(t.sql, t.catalog);
  const std::uint64_t full = cout_cost(q, t.catalog, JoinOrder({3, 2, 1, 0}));
  EXPECT_EQ(full, 1100u);
  const std::uint64_t capped = cout_cost(q, t.catalog, JoinOrder({3, 2, 1, 0}), 50);
  EXPECT_GT(capped, 50u);
  EXPECT_LE(capped, full);
}

TEST(OptimalOrder, SingleTable) {
  Catalog c = int_catalog({{"A", {{1}}}});
  const QuerySpec q = parse_query("SELECT * FROM A", c);
  const auto best = optimal_order(q, c);
  EXPECT_EQ(best.order, JoinOrder({0}));
  EXPECT_EQ(best.cost, 0u);
}

TEST(OptimalOrder, TortureStartsAtGoodEnd) {
  const TortureInstance t = make_torture({TorturePattern::kChain, 4, 10, TortureMode::kUdf, 3});
  const QuerySpec q = parse_query(t.sql, t.catalog);
  const auto best = optimal_order(q, t.catalog);
  EXPECT_EQ(best.cost, 0u);
  EXPECT_EQ(best.order.tables().front(), 2u);
}

TEST(OptimalOrder, SymmetricTieIsLexicographicallyFirst) {
  Catalog c = int_catalog({{"A", {{1, 2}}}, {"B", {{1, 2}}}, {"C", {{1, 2}}}});
  const QuerySpec q = parse_query("SELECT * FROM A, B, C", c);
  EXPECT_EQ(optimal_order(q, c).order, JoinOrder({0, 1, 2}));
}

TEST(OptimalOrder, NoEnumeratedOrderIsCheaper) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto inst = make_random_instance(seed);
    const auto best = optimal_order(inst.spec, inst.catalog);
    for (const JoinOrder& order : enumerate_join_orders(JoinGraph::from_query(inst.spec))) {
      EXPECT_LE(best.cost, cout_cost(inst.spec, inst.catalog, order));
    }
  }
}

TEST(OptimalOrder, RejectsTooManyTables) {
  const TortureInstance t = make_torture({TorturePattern::kChain, 5, 2, TortureMode::kUdf, 1});
  const QuerySpec q = parse_query(t.sql, t.catalog);
  EXPECT_THROW(optimal_order(q, t.catalog, 4), Error);
}

TEST(WorstOrder, IsMostExpensiveUpToCap) {
  const TortureInstance t = make_torture({TorturePattern::kChain, 4, 10, TortureMode::kUdf, 1});
  const QuerySpec q = parse_query(t.sql, t.catalog);
  const auto worst = worst_order(q, t.catalog, 1'000'000);
  EXPECT_FALSE(worst.capped);
  for (const JoinOrder& order : enumerate_join_orders(JoinGraph::from_query(q))) {
    EXPECT_GE(worst.cost, cout_cost(q, t.catalog, order));
  }
  EXPECT_TRUE(worst_order(q, t.catalog, 10).capped);
}

TEST(EnumerateLeftDeep, RespectsDomains) {
  Catalog c = int_catalog({{"A", {{1, 2, 3}}}, {"B", {{1, 2, 3}}}});
  const QuerySpec q = parse_query("SELECT * FROM A, B WHERE A.a = B.a", c);
  const auto r = enumerate_left_deep(q, c, JoinOrder({1, 0}), {{0, 2}, {2}}, std::nullopt, true);
  EXPECT_FALSE(r.capped);
  EXPECT_EQ(r.tuples, (TupleList{{2, 2}}));
  EXPECT_EQ(r.cost, 1u);
}

TEST(NestedLoopJoin, PostprocessingApplied) {
  Catalog c = int_catalog({{"A", {{3, 1, 2}}}});
  const QuerySpec q = parse_query("SELECT A.a FROM A ORDER BY A.a", c);
  const QueryResult r = nested_loop_join(q, c);
  ASSERT_EQ(r.rows.size(), 3u);
  EXPECT_EQ(r.rows[0], (Row{Value{std::int64_t{1}}}));
  EXPECT_EQ(r.rows[2], (Row{Value{std::int64_t{3}}}));
}

}  // namespace
}  // namespace uctjoin
