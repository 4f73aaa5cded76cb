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

/// \file metrics.hpp
/// \brief Orderings and the bandwidth measures evaluated on them.

#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bandopt/instance.hpp"

namespace bandopt {

/// Bijection from vertices {0..n-1} to positions {1..n}. Positions are
/// 1-based everywhere in the public surface.
class Ordering {
 public:
  Ordering() = default;

  static Ordering identity(std::size_t n);
  /// `positions[v]` is the 1-based position of vertex v. Throws
  /// InvalidOrderingError if this is not a bijection onto {1..n}.
  static Ordering from_positions(std::vector<std::size_t> positions);
  /// `sequence[k]` is the vertex placed at position k+1.
  static Ordering from_sequence(std::span<const std::size_t> sequence);

  std::size_t size() const noexcept { return positions_.size(); }
  std::size_t position(std::size_t v) const { return positions_.at(v); }
  std::span<const std::size_t> positions() const noexcept { return positions_; }

  /// Vertices listed by increasing position.
  std::vector<std::size_t> sequence() const;
  /// pi'(v) = n + 1 - pi(v).
  Ordering reversed() const;
  /// Maps positions back to vertices, as an ordering of the positions.
  Ordering inverse() const;

  friend bool operator==(const Ordering&, const Ordering&) = default;
  friend auto operator<=>(const Ordering&, const Ordering&) = default;

 private:
  explicit Ordering(std::vector<std::size_t> positions)
      : positions_(std::move(positions)) {}

  std::vector<std::size_t> positions_;
};

struct Bandwidth {
  double value = 0.0;
  /// Lexicographically smallest pair (u < v) attaining the maximum; empty
  /// when there is no pair.
  std::optional<std::pair<std::size_t, std::size_t>> argpair;
};

/// max over u != v of u_uv * |pi(u) - pi(v)|.
Bandwidth weighted_bandwidth(const InteractionMatrix& u, const Ordering& ord);

/// max over bonds of |pi(u) - pi(v)|, 0 for an empty bond set.
std::size_t classic_bandwidth(std::span<const Bond> bonds, const Ordering& ord);

/// M[pi(i)-1][pi(j)-1] = U[i][j].
InteractionMatrix permute_matrix(const InteractionMatrix& u, const Ordering& ord);

/// (obj_rcm - opt) / opt * 100. Throws DomainError for opt <= 0.
double rcm_gap(double obj_rcm, double opt);

std::string to_json(const Ordering& ord);
Ordering ordering_from_json(const std::string& text);
void save(const Ordering& ord, const std::filesystem::path& path);
Ordering load_ordering(const std::filesystem::path& path);

/// Row-per-line CSV, 17 significant digits.
std::string to_csv(const InteractionMatrix& u);

}  // namespace bandopt
