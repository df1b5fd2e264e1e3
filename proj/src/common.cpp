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

#include "uctjoin/common.hpp"

#include <limits>

namespace uctjoin {

SqlError::SqlError(const std::string& message, std::size_t position)
    : Error(message + " (at position " + std::to_string(position) + ")"), position_(position) {}

CsvError::CsvError(const std::string& message, std::size_t row)
    : Error(row == 0 ? message : message + " (row " + std::to_string(row) + ")"),
      detail_(message),
      row_(row) {}

std::vector<TableId> TableSet::members() const {
  std::vector<TableId> out;
  out.reserve(size());
  for (std::uint64_t b = bits_; b != 0; b &= b - 1) {
    out.push_back(static_cast<TableId>(std::countr_zero(b)));
  }
  return out;
}

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

std::size_t Rng::uniform(std::size_t n) {
  // Rejection sampling keeps results identical across standard library implementations.
  const std::uint64_t bound = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return static_cast<std::size_t>(x % bound);
}

double Rng::uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

Rng Rng::split() {
  std::seed_seq seq{engine_(), engine_()};
  std::mt19937_64 child(seq);
  return Rng(child());
}

}  // namespace uctjoin
