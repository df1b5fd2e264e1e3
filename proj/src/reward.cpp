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

#include "uctjoin/reward.hpp"

#include <algorithm>
#include <stdexcept>

namespace uctjoin {

double binary_reward(bool batch_finished) { return batch_finished ? 1.0 : 0.0; }

double leftmost_reward(std::uint64_t delta0, std::uint64_t card0) {
  if (card0 == 0) return 1.0;
  return std::min(1.0, static_cast<double>(delta0) / static_cast<double>(card0));
}

double scaled_delta_reward(std::span<const std::uint64_t> deltas, std::span<const std::uint64_t> cardinalities) {
  if (deltas.size() != cardinalities.size()) throw std::invalid_argument("scaled_delta_reward: size mismatch");
  double sum = 0.0;
  double scale = 1.0;
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    // An empty table finishes the join at once.
    if (cardinalities[i] == 0) return 1.0;
    scale *= static_cast<double>(cardinalities[i]);
    sum += static_cast<double>(deltas[i]) / scale;
  }
  return std::min(1.0, sum);
}

}  // namespace uctjoin
