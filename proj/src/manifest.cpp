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

#include "uctjoin/manifest.hpp"

#include <fstream>

#include <json.hpp>

namespace uctjoin {

void write_manifest(const std::filesystem::path& file, const std::vector<ManifestEntry>& entries) {
  nlohmann::ordered_json doc;
  auto& tables = doc["tables"] = nlohmann::ordered_json::array();
  for (const auto& e : entries) {
    nlohmann::ordered_json t;
    t["name"] = e.name;
    t["path"] = e.path.generic_string();
    t["header"] = e.header;
    auto& cols = t["columns"] = nlohmann::ordered_json::array();
    for (const auto& c : e.columns) cols.push_back({{"name", c.name}, {"type", std::string(to_string(c.type))}});
    tables.push_back(std::move(t));
  }
  std::ofstream out(file);
  if (!out) throw Error("cannot write manifest '" + file.string() + "'");
  out << doc.dump(2) << "\n";
}

std::vector<ManifestEntry> read_manifest(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw Error("cannot read manifest '" + file.string() + "'");
  std::vector<ManifestEntry> entries;
  try {
    const auto doc = nlohmann::json::parse(in);
    for (const auto& t : doc.at("tables")) {
      ManifestEntry e;
      e.name = t.at("name").get<std::string>();
      e.path = t.at("path").get<std::string>();
      e.header = t.value("header", true);
      for (const auto& c : t.at("columns")) {
        e.columns.push_back({c.at("name").get<std::string>(), parse_column_type(c.at("type").get<std::string>())});
      }
      entries.push_back(std::move(e));
    }
  } catch (const nlohmann::json::exception& ex) {
    throw Error("malformed manifest '" + file.string() + "': " + ex.what());
  }
  return entries;
}

Catalog load_manifest(const std::filesystem::path& file) {
  Catalog catalog;
  for (auto& e : read_manifest(file)) {
    const auto path = e.path.is_absolute() ? e.path : file.parent_path() / e.path;
    catalog.add(load_csv(path, e.name, e.columns, e.header));
  }
  return catalog;
}

}  // namespace uctjoin
