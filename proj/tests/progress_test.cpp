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

#include "uctjoin/progress.hpp"

namespace uctjoin {
namespace {

ExecutionState state(std::vector<std::size_t> indices, std::size_t depth) { return {std::move(indices), depth}; }

TEST(ProgressStore, WriteThenRead) {
  ProgressStore store(3);
  OffsetVector offsets(3, 0);
  const JoinOrder order({2, 0, 1});
  EXPECT_EQ(store.restore(order, offsets), ExecutionState::fresh(offsets));
  const ExecutionState s = state({1, 0, 4}, 2);
  store.backup(order, s, offsets);
  EXPECT_EQ(store.restore(order, offsets), s);
  EXPECT_EQ(offsets, (OffsetVector{0, 0, 4}));
}

TEST(ProgressStore, OffsetFollowsLeftmostAndNeverDecreases) {
  ProgressStore store(2);
  OffsetVector offsets(2, 0);
  const JoinOrder order({0, 1});
  store.backup(order, state({7, 1}, 1), offsets);
  EXPECT_EQ(offsets[0], 7u);
  store.backup(order, state({3, 0}, 0), offsets);
  EXPECT_EQ(offsets[0], 7u);
  EXPECT_EQ(offsets[1], 0u);
}

TEST(StateIsAhead, Examples) {
  const JoinOrder a({0, 1, 2});
  const JoinOrder b({0, 1, 2});
  EXPECT_EQ(state_is_ahead(state({5, 3, 0}, 0), state({5, 1, 0}, 0), a, b, 2), std::optional<std::size_t>(1));
  EXPECT_EQ(state_is_ahead(state({5, 3, 0}, 0), state({5, 3, 0}, 0), a, b, 2), std::nullopt);
  EXPECT_EQ(state_is_ahead(state({4, 9, 0}, 0), state({5, 1, 0}, 0), a, b, 2), std::nullopt);
  // A lead of exactly one is not enough.
  EXPECT_EQ(state_is_ahead(state({6, 0, 0}, 0), state({5, 0, 0}, 0), a, b, 1), std::nullopt);
  EXPECT_EQ(state_is_ahead(state({7, 0, 0}, 0), state({5, 0, 0}, 0), a, b, 1), std::optional<std::size_t>(0));
}

TEST(ProgressStore, FastForwardFromSibling) {
  ProgressStore store(4);
  OffsetVector offsets(4, 0);
  const JoinOrder mine({0, 1, 2, 3});
  const JoinOrder sibling({0, 1, 3, 2});
  store.backup(mine, state({5, 1, 0, 0}, 1), offsets);
  store.backup(sibling, state({5, 3, 4, 2}, 3), offsets);
  EXPECT_EQ(store.restore(mine, offsets), state({5, 2, 0, 0}, 0));
}

TEST(ProgressStore, OffsetDominatesStaleState) {
  ProgressStore store(3);
  OffsetVector offsets(3, 0);
  const JoinOrder order({0, 1, 2});
  store.backup(order, state({3, 2, 1}, 2), offsets);
  // Another order starting elsewhere cannot move table 0's offset, so raise it directly.
  offsets = {6, 1, 0};
  const ExecutionState restored = store.restore(order, offsets);
  EXPECT_EQ(restored, state({6, 1, 0}, 0));
}

TEST(ProgressStore, DeeperStateWinsOnEqualVector) {
  ProgressStore store(2);
  OffsetVector offsets(2, 0);
  const JoinOrder order({0, 1});
  store.backup(order, state({0, 0}, 1), offsets);
  EXPECT_EQ(store.restore(order, offsets).depth, 1u);
}

TEST(ProgressStore, PositionsPastDepthTrackOffsets) {
  ProgressStore store(3);
  OffsetVector offsets(3, 0);
  const JoinOrder order({0, 1, 2});
  store.backup(order, state({2, 1, 0}, 1), offsets);
  offsets[2] = 4;
  EXPECT_EQ(store.restore(order, offsets), state({2, 1, 4}, 1));
}

TEST(ProgressStore, DoneStateIsKept) {
  ProgressStore store(2);
  OffsetVector offsets(2, 0);
  const JoinOrder order({1, 0});
  store.backup(order, state({0, 9}, ExecutionState::kDone), offsets);
  EXPECT_TRUE(store.restore(order, offsets).done());
  EXPECT_EQ(offsets[1], 9u);
  EXPECT_EQ(store.state_count(), 1u);
  EXPECT_EQ(store.node_count(), 3u);
}

}  // namespace
}  // namespace uctjoin
