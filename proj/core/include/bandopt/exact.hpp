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

/// \file exact.hpp
/// \brief Exact weighted bandwidth minimization.
///
/// The branch-and-bound fills positions 1..n left to right. A node's partial
/// objective is the largest u_vw * |pi(v) - pi(w)| over already placed pairs;
/// since it never decreases along a path, a node is pruned as soon as it
/// reaches the incumbent. Two optional reinforcements:
///
///  - lower bound: every ordering puts some pair of maximum weight at distance
///    >= 1, so max u_vw bounds the optimum from below and the search stops as
///    soon as an incumbent attains it;
///  - symmetry breaking: an ordering and its reversal have the same
///    objective, so an anchor vertex may be restricted to the first
///    ceil(n/2) positions without losing every optimum.
///
/// All floating point comparisons are exact (no epsilon). Objectives are
/// maxima of products computed identically in every code path, so the solver
/// and the brute-force oracle agree bit for bit.

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "bandopt/instance.hpp"
#include "bandopt/metrics.hpp"

namespace bandopt {

struct SolveConfig {
  bool use_lower_bound = true;
  bool use_symmetry_breaking = true;
  double time_limit_s = 3600.0;
  std::optional<std::uint64_t> node_limit;
  /// Vertex restricted to the first half; defaults to default_anchor(U).
  std::optional<std::size_t> anchor_vertex;
  /// 1 keeps node counts reproducible.
  std::size_t threads = 1;
  /// Warm start (typically the RCM ordering). Identity when absent.
  std::optional<Ordering> initial_ordering;

  /// Throws DomainError on a non-positive time limit, zero threads, or an
  /// anchor / warm start that does not fit an n-vertex problem.
  void validate(std::size_t n) const;
};

enum class SolveStatus { optimal, feasible_timeout };

std::string_view to_string(SolveStatus s) noexcept;
SolveStatus status_from_string(std::string_view s);

struct SolveResult {
  Ordering ordering;
  double objective = 0.0;
  /// Proven bound: the objective itself when optimal, otherwise the
  /// max-weight bound.
  double lower_bound = 0.0;
  SolveStatus status = SolveStatus::optimal;
  std::uint64_t nodes_explored = 0;
  double wall_time_s = 0.0;
};

/// Largest off-diagonal entry. Throws DomainError for n < 2.
double theoretical_lower_bound(const InteractionMatrix& u);

/// Vertex with the largest row sum, ties by smallest index.
std::size_t default_anchor(const InteractionMatrix& u);

inline constexpr std::size_t kBruteForceMaxN = 10;

/// Enumerates all n! orderings; returns the lexicographically smallest
/// optimal position vector. Throws DomainError for n == 0 or n > 10.
SolveResult brute_force(const InteractionMatrix& u);

SolveResult branch_and_bound(const InteractionMatrix& u, const SolveConfig& cfg = {});

/// Serializes the position-assignment MILP (binaries x_v{v}_i{i}, continuous
/// b) in LP text format. Rows: pos{i}, vtx{v}, bw_{u}_{v} for every ordered
/// pair, plus lb and sym when the corresponding reinforcement is enabled.
/// Throws DomainError for n < 2.
std::string lp_model(const InteractionMatrix& u, const SolveConfig& cfg = {});
void export_lp(const InteractionMatrix& u, const SolveConfig& cfg,
               const std::filesystem::path& path);

std::string to_json(const SolveResult& r);

}  // namespace bandopt
