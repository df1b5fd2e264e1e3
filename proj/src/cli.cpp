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

#include "uctjoin/cli.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "uctjoin/executor.hpp"
#include "uctjoin/generic.hpp"
#include "uctjoin/manifest.hpp"
#include "uctjoin/oracle.hpp"
#include "uctjoin/torture.hpp"

namespace uctjoin {

namespace {

// Cost cap used when resolving the worst order by enumeration.
constexpr std::uint64_t kWorstOrderCap = 1'000'000;

std::pair<std::string, std::string> split_pair(const std::string& text, const char* flag) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) throw Error(std::string(flag) + " expects NAME=VALUE, got '" + text + "'");
  return {text.substr(0, eq), text.substr(eq + 1)};
}

std::vector<ColumnSpec> parse_schema(const std::string& text) {
  std::vector<ColumnSpec> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos || colon == 0) throw Error("schema entries must be col:type, got '" + item + "'");
    out.push_back({item.substr(0, colon), parse_column_type(item.substr(colon + 1))});
  }
  if (out.empty()) throw Error("empty schema");
  return out;
}

struct TableArgs {
  std::vector<std::string> tables;
  std::vector<std::string> schemas;
  bool header = true;
};

std::vector<ManifestEntry> inline_entries(const TableArgs& args) {
  std::map<std::string, std::vector<ColumnSpec>> schemas;
  for (const auto& s : args.schemas) {
    auto [name, cols] = split_pair(s, "--schema");
    schemas[name] = parse_schema(cols);
  }
  std::vector<ManifestEntry> entries;
  for (const auto& t : args.tables) {
    auto [name, path] = split_pair(t, "--table");
    auto it = schemas.find(name);
    if (it == schemas.end()) throw Error("no --schema given for table '" + name + "'");
    entries.push_back({name, path, args.header, it->second});
  }
  return entries;
}

Catalog load_entries(const std::vector<ManifestEntry>& entries) {
  Catalog catalog;
  for (const auto& e : entries) catalog.add(load_csv(e.path, e.name, e.columns, e.header));
  return catalog;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct QueryArgs {
  TableArgs tables;
  std::string manifest;
  std::string sql;
  std::string sql_file;
  std::string strategy = "skinner-c";
  std::uint64_t budget = 500;
  std::optional<double> w;
  std::size_t batches = 10;
  std::uint64_t seed = 42;
  std::uint64_t alpha = 1;
  std::string stats;
  bool count = false;
  std::string fixed_order;
  std::optional<std::uint64_t> max_examined;
  bool parallel = false;
};

JoinOrder resolve_order(const std::string& text, const QuerySpec& spec, const Catalog& catalog, std::uint64_t seed) {
  if (text == "optimal") return optimal_order(spec, catalog).order;
  if (text == "worst") return worst_order(spec, catalog, kWorstOrderCap).order;
  if (text == "random") {
    const auto orders = enumerate_join_orders(JoinGraph::from_query(spec));
    Rng rng(seed);
    return orders[rng.uniform(orders.size())];
  }
  return parse_join_order(text, spec);
}

void write_stats(const std::string& path, const RunStats& stats) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write stats to '" + path + "'");
  out << to_json(stats);
}

int cmd_query(const QueryArgs& a, std::ostream& out) {
  Catalog catalog;
  if (!a.manifest.empty()) {
    catalog = load_manifest(a.manifest);
    for (auto& e : inline_entries(a.tables)) catalog.add(load_csv(e.path, e.name, e.columns, e.header));
  } else {
    catalog = load_entries(inline_entries(a.tables));
  }
  if (a.sql.empty() == a.sql_file.empty()) throw Error("give exactly one of --sql and --sql-file");
  const std::string text = a.sql.empty() ? read_file(a.sql_file) : a.sql;
  const QuerySpec spec = parse_query(text, catalog);

  QueryResult result;
  RunStats stats;
  std::string strategy = a.strategy;
  std::string fixed = a.fixed_order;
  if (strategy.starts_with("fixed:")) {
    fixed = strategy.substr(6);
    strategy = "fixed";
  }
  const GenericOptions generic{a.batches, a.w.value_or(std::sqrt(2.0)), a.seed};
  if (strategy == "skinner-c") {
    SkinnerCOptions options;
    options.budget = a.budget;
    options.w = a.w.value_or(1e-6);
    options.seed = a.seed;
    options.parallel_preprocess = a.parallel;
    RunResult run = skinner_c(spec, catalog, options);
    result = std::move(run.result);
    stats = std::move(run.stats);
  } else if (strategy == "skinner-g-sim") {
    SimulatedEngine engine(spec, catalog, a.alpha);
    RunResult run = skinner_g(spec, catalog, engine, generic);
    result = std::move(run.result);
    stats = std::move(run.stats);
  } else if (strategy == "skinner-h-sim") {
    SimulatedEngine engine(spec, catalog, a.alpha);
    const JoinOrder traditional = resolve_order(fixed.empty() ? "optimal" : fixed, spec, catalog, a.seed);
    HybridResult run = skinner_h(spec, catalog, engine, traditional, generic);
    result = std::move(run.run.result);
    stats = std::move(run.run.stats);
  } else if (strategy == "oracle") {
    const TupleList tuples = nested_loop_tuples(spec, catalog);
    result = finalize_result(spec, catalog, tuples);
    stats.strategy = "oracle";
    stats.result_rows = tuples.size();
  } else if (strategy == "fixed") {
    if (fixed.empty()) throw Error("fixed strategy needs --fixed-order or fixed:<order>");
    const JoinOrder order = resolve_order(fixed, spec, catalog, a.seed);
    const PreparedQuery prepared = preprocess_c(spec, catalog, {a.parallel});
    FixedRunResult run = execute_fixed_order(prepared, order, {true, a.max_examined});
    if (!run.finished) throw Error("fixed order " + describe(order, spec) + " exceeded --max-examined");
    result = finalize_result(spec, catalog, run.tuples);
    stats.strategy = "fixed:" + describe(order, spec);
    stats.slices = 1;
    stats.result_rows = run.tuples.size();
    stats.examined_tuples = run.examined;
    stats.iterations = run.iterations;
    stats.order_visits[describe(order, spec)] = 1;
    stats.per_first_table_visits[spec.tables[order[0]].alias] = 1;
    stats.top_order_share = 1.0;
  } else {
    throw Error("unknown strategy '" + a.strategy + "'");
  }
  if (a.count) {
    out << result.rows.size() << "\n";
  } else {
    out << format_result(result);
  }
  if (!a.stats.empty()) write_stats(a.stats, stats);
  return 0;
}

void add_table_options(CLI::App* cmd, TableArgs& args) {
  cmd->add_option("--table", args.tables, "Table as NAME=PATH (repeatable)");
  cmd->add_option("--schema", args.schemas, "Columns of a table as NAME=col:type,... (repeatable)");
  cmd->add_flag("--header,!--no-header", args.header, "CSV files start with a header line (default)");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"uctjoin: SPJ query engine that learns join orders during execution"};
  app.require_subcommand(1);

  TableArgs load_args;
  std::string load_manifest_path;
  auto* load = app.add_subcommand("load", "Validate CSV tables and write a catalog manifest");
  add_table_options(load, load_args);
  load->add_option("--manifest", load_manifest_path, "Manifest file to write")->required();

  QueryArgs q;
  auto* query = app.add_subcommand("query", "Run one query");
  add_table_options(query, q.tables);
  query->add_option("--manifest", q.manifest, "Catalog manifest to load");
  query->add_option("--sql", q.sql, "Query text");
  query->add_option("--sql-file", q.sql_file, "File holding the query text");
  query->add_option("--strategy", q.strategy,
                    "skinner-c | skinner-g-sim | skinner-h-sim | oracle | fixed | fixed:<order>")
      ->capture_default_str();
  query->add_option("--budget", q.budget, "Loop iterations per time slice")->capture_default_str();
  query->add_option("--w", q.w, "Exploration weight (default 1e-6 for skinner-c, sqrt(2) otherwise)");
  query->add_option("--batches", q.batches, "Batches per table")->capture_default_str()->check(CLI::PositiveNumber);
  query->add_option("--seed", q.seed, "Random seed")->capture_default_str();
  query->add_option("--alpha", q.alpha, "Simulated time units per intermediate tuple")->capture_default_str();
  query->add_option("--stats", q.stats, "Write run statistics as JSON to this file");
  query->add_flag("--count", q.count, "Print only the number of result rows");
  query->add_option("--fixed-order", q.fixed_order,
                    "a,b,c | optimal | worst | random; the traditional plan for skinner-h-sim");
  query->add_option("--max-examined", q.max_examined, "Abort fixed-order runs after this many examined tuples");
  query->add_flag("--parallel-preprocess", q.parallel, "Filter and index tables in parallel");

  TortureConfig torture;
  std::string pattern = "chain";
  std::string mode = "udf";
  std::string out_dir;
  auto* gen = app.add_subcommand("gen-torture", "Generate a torture benchmark instance");
  gen->add_option("--pattern", pattern, "chain | star")->capture_default_str();
  gen->add_option("--tables", torture.tables, "Number of tables")->capture_default_str();
  gen->add_option("--rows", torture.rows, "Rows per table")->capture_default_str();
  gen->add_option("--mode", mode, "udf | correlation")->capture_default_str();
  gen->add_option("--good", torture.good, "1-based position of the predicate that empties the result")
      ->capture_default_str();
  gen->add_option("--out", out_dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*load) {
      auto entries = inline_entries(load_args);
      if (entries.empty()) throw Error("load needs at least one --table");
      const Catalog catalog = load_entries(entries);
      for (auto& e : entries) {
        e.path = std::filesystem::absolute(e.path);
        out << "loaded " << e.name << " (" << catalog.table(e.name).row_count() << " rows)\n";
      }
      write_manifest(load_manifest_path, entries);
      return 0;
    }
    if (*query) return cmd_query(q, out);
    torture.pattern = parse_torture_pattern(pattern);
    torture.mode = parse_torture_mode(mode);
    write_torture(torture, out_dir);
    out << "wrote " << torture.tables << " tables to " << out_dir << "\n";
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace uctjoin
