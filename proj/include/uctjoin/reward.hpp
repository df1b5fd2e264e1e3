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

#include <cstdint>
#include <span>

namespace uctjoin {

/// 1 when the batch was processed entirely within its timeout, else 0.
double binary_reward(bool batch_finished);

/// Fraction of the left-most table covered by the slice; 1 for an empty table.
double leftmost_reward(std::uint64_t delta0, std::uint64_t card0);

/// Index advances per join-order position, scaled by the product of the
/// cardinalities up to that position and capped at 1.
/// `deltas` and `cardinalities` are both in join-order position order.
double scaled_delta_reward(std::span<const std::uint64_t> deltas, std::span<const std::uint64_t> cardinalities);

}  // namespace uctjoin
