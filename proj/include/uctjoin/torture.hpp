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

#include <filesystem>
#include <string>

#include "uctjoin/storage.hpp"

namespace uctjoin {

enum class TorturePattern { kChain, kStar };
enum class TortureMode {
  kUdf,          ///< UDF join predicates, all true except one always false
  kCorrelation,  ///< equality joins over constant columns, one with no matches
};

TorturePattern parse_torture_pattern(std::string_view text);
TortureMode parse_torture_mode(std::string_view text);

/// Tables t1..tm with `rows` rows each. Join predicate g (1-based) links
/// t_g and t_{g+1} in a chain, or t1 and t_{g+1} in a star, and is the only
/// one that rejects every pair.
struct TortureConfig {
  TorturePattern pattern = TorturePattern::kChain;
  std::size_t tables = 4;
  std::size_t rows = 100;
  TortureMode mode = TortureMode::kUdf;
  std::size_t good = 1;
};

struct TortureInstance {
  Catalog catalog;
  std::string sql;
};

/// Throws Error unless tables >= 2, rows >= 1 and 1 <= good < tables.
TortureInstance make_torture(const TortureConfig& config);

/// Writes t<i>.csv, query.sql and catalog.json into `dir`.
void write_torture(const TortureConfig& config, const std::filesystem::path& dir);

}  // namespace uctjoin
