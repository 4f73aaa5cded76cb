// Copyright 2026 The bandopt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/// \file harness.hpp
/// \brief Batch driver: instance suites, RCM vs. exact comparison, reports.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bandopt/exact.hpp"

namespace bandopt {

/// Desk-scale sizes, small enough for the brute-force cross-check.
inline const std::vector<std::size_t> kDeskScaleSizes{6, 7, 8, 9};
/// Closer to the published study; expect time limits to bind.
inline const std::vector<std::size_t> kPaperScaleSizes{10, 15, 20};

/// One CSV row. Missing values (failed generation, no A/B run) are empty.
struct GapRow {
  std::string id;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::optional<double> obj_rcm;
  std::optional<double> opt;
  std::optional<double> gap_percent;
  /// "optimal", "feasible-timeout", or a failure tag ("generation-failed",
  /// "oracle-mismatch", "ab-mismatch", "error").
  std::string status;
  std::optional<std::uint64_t> nodes_on;
  /// Only set when the unreinforced run finished.
  std::optional<std::uint64_t> nodes_off;
  double wall_time_s = 0.0;

  friend bool operator==(const GapRow&, const GapRow&) = default;
};

struct GapReport {
  std::vector<GapRow> rows;
  /// Messages for rows whose status is a failure tag, in row order.
  std::vector<std::string> failures;
};

struct SuiteOptions {
  /// Also solve with both reinforcements disabled and fill nodes_off.
  bool ab_reinforcements = false;
  /// Re-solve by enumeration (n <= 10) and flag any disagreement.
  bool oracle_check = false;
  /// Instances solved concurrently; rows stay ordered by (n, replicate).
  std::size_t jobs = 1;
};

/// seed0 + mix(n, replicate), wrapping modulo 2^64.
std::uint64_t suite_seed(std::uint64_t seed0, std::size_t n, std::size_t replicate);

/// Generates per_size instances for each n, runs RCM and the exact solver
/// (warm-started from RCM) and records one row per instance. Per-instance
/// failures are recorded, never dropped. Throws DomainError for empty sizes
/// or per_size == 0.
GapReport run_suite(const std::vector<std::size_t>& sizes, std::size_t per_size,
                    std::uint64_t seed0, const SolveConfig& cfg,
                    const SuiteOptions& options = {});

inline constexpr const char* kCsvHeader =
    "id,n,seed,obj_rcm,opt,gap_percent,status,nodes_on,nodes_off,wall_time_s";

/// Fixed column order, 12 significant digits.
std::string to_csv(const GapReport& report);
/// Inverse of to_csv; re-emitting the result reproduces the input bytes.
GapReport parse_gap_csv(const std::string& text);

struct GapStats {
  std::size_t rows = 0;
  std::size_t optimal = 0;
  std::optional<double> mean_gap;
  std::optional<double> median_gap;
  /// Mean of (nodes_off - nodes_on) / nodes_off * 100 over rows where both
  /// runs completed.
  std::optional<double> mean_node_reduction;
  double mean_wall_time_s = 0.0;
};

struct SuiteSummary {
  std::vector<std::pair<std::size_t, GapStats>> per_size;  // ascending n
  GapStats overall;
};

/// Throws DomainError for an empty report.
SuiteSummary summarize(const GapReport& report);
std::string to_json(const SuiteSummary& summary);

}  // namespace bandopt
