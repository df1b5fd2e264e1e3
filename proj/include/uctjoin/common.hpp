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

#include <bit>
#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace uctjoin {

/// Position of a table alias in the FROM clause of a query.
using TableId = std::uint32_t;

/// Upper bound on the number of tables joined by one query.
inline constexpr std::size_t kMaxTables = 32;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or unresolvable query text; `position` is a 0-based byte offset.
class SqlError : public Error {
 public:
  SqlError(const std::string& message, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// CSV ingestion failure; `row` is the 1-based data row (0 when not row-specific).
class CsvError : public Error {
 public:
  CsvError(const std::string& message, std::size_t row);
  std::size_t row() const { return row_; }
  /// Message without the row suffix.
  const std::string& detail() const { return detail_; }

 private:
  std::string detail_;
  std::size_t row_;
};

/// Small set of table ids backed by a bit mask.
class TableSet {
 public:
  constexpr TableSet() = default;
  constexpr explicit TableSet(std::uint64_t bits) : bits_(bits) {}

  static constexpr TableSet all(std::size_t m) {
    return TableSet(m >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1);
  }

  constexpr bool contains(TableId t) const { return (bits_ >> t) & 1U; }
  constexpr void insert(TableId t) { bits_ |= std::uint64_t{1} << t; }
  constexpr void erase(TableId t) { bits_ &= ~(std::uint64_t{1} << t); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr bool is_subset_of(TableSet other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr bool intersects(TableSet other) const { return (bits_ & other.bits_) != 0; }
  constexpr std::uint64_t bits() const { return bits_; }

  constexpr TableSet operator|(TableSet o) const { return TableSet(bits_ | o.bits_); }
  constexpr TableSet operator&(TableSet o) const { return TableSet(bits_ & o.bits_); }
  constexpr TableSet operator-(TableSet o) const { return TableSet(bits_ & ~o.bits_); }
  constexpr bool operator==(const TableSet&) const = default;

  /// Members in ascending id order.
  std::vector<TableId> members() const;

 private:
  std::uint64_t bits_ = 0;
};

/// Seeded generator through which all randomness of a run flows.
/// Child generators obtained by split() are deterministic functions of the parent state.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next() { return engine_(); }
  /// Uniform integer in [0, n); n must be positive.
  std::size_t uniform(std::size_t n);
  /// Uniform real in [0, 1).
  double uniform01();
  bool bernoulli(double p) { return uniform01() < p; }
  Rng split();

 private:
  std::mt19937_64 engine_;
};

}  // namespace uctjoin
