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
#include <vector>

#include "uctjoin/storage.hpp"

namespace uctjoin {

/// One CSV-backed table in a catalog manifest.
struct ManifestEntry {
  std::string name;
  std::filesystem::path path;  ///< relative paths resolve against the manifest's directory
  bool header = true;
  std::vector<ColumnSpec> columns;
};

/// Writes {"tables":[{"name","path","header","columns":[{"name","type"}]}]}.
void write_manifest(const std::filesystem::path& file, const std::vector<ManifestEntry>& entries);
std::vector<ManifestEntry> read_manifest(const std::filesystem::path& file);
/// Reads the manifest and loads every table it lists.
Catalog load_manifest(const std::filesystem::path& file);

}  // namespace uctjoin
