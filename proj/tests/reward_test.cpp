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

#include "uctjoin/common.hpp"
#include "uctjoin/reward.hpp"

namespace uctjoin {
namespace {

TEST(BinaryReward, FinishedOrNot) {
  EXPECT_EQ(binary_reward(true), 1.0);
  EXPECT_EQ(binary_reward(false), 0.0);
}

TEST(LeftmostReward, Fractions) {
  EXPECT_EQ(leftmost_reward(0, 10), 0.0);
  EXPECT_EQ(leftmost_reward(10, 10), 1.0);
  EXPECT_DOUBLE_EQ(leftmost_reward(2, 10), 0.2);
  EXPECT_EQ(leftmost_reward(0, 0), 1.0);
}

TEST(ScaledDeltaReward, Examples) {
  const std::uint64_t cards[] = {10, 5};
  const std::uint64_t d1[] = {2, 3};
  EXPECT_NEAR(scaled_delta_reward(d1, cards), 0.26, 1e-12);
  const std::uint64_t zero[] = {0, 0};
  EXPECT_EQ(scaled_delta_reward(zero, cards), 0.0);
  const std::uint64_t full[] = {10, 0};
  EXPECT_EQ(scaled_delta_reward(full, cards), 1.0);
  const std::uint64_t over[] = {10, 5};
  EXPECT_EQ(scaled_delta_reward(over, cards), 1.0);
}

TEST(ScaledDeltaReward, MonotoneAndAboveLeftmost) {
  Rng rng(4);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t m = 1 + rng.uniform(4);
    std::vector<std::uint64_t> cards(m), deltas(m);
    for (std::size_t i = 0; i < m; ++i) {
      cards[i] = 1 + rng.uniform(20);
      deltas[i] = rng.uniform(cards[i] + 1);
    }
    const double base = scaled_delta_reward(deltas, cards);
    EXPECT_GE(base, 0.0);
    EXPECT_LE(base, 1.0);
    EXPECT_GE(base + 1e-15, leftmost_reward(deltas[0], cards[0]));
    const std::size_t i = rng.uniform(m);
    ++deltas[i];
    EXPECT_GE(scaled_delta_reward(deltas, cards), base);
  }
}

}  // namespace
}  // namespace uctjoin
