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

/// \file instance.hpp
/// \brief Amorphous 2-D site instances and their 1/d^6 interaction matrices.

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace bandopt {

struct Site {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Site&, const Site&) = default;
};

/// Unordered vertex pair, stored with first < second.
struct Bond {
  std::size_t first = 0;
  std::size_t second = 0;

  friend bool operator==(const Bond&, const Bond&) = default;
  friend auto operator<=>(const Bond&, const Bond&) = default;
};

/// Inputs of the site generator besides n and the seed.
struct GenerationParams {
  double box_side = 1.0;  ///< L, sites are drawn in [0, L)^2
  double r_min = 0.7;     ///< minimum pairwise separation

  /// L = sqrt(n) (unit density) and r_min = 0.7.
  static GenerationParams defaults(std::size_t n);

  friend bool operator==(const GenerationParams&,
                         const GenerationParams&) = default;
};

/// A geometric problem instance: site coordinates plus the short-range bond
/// structure. Bonds are sorted and unique; the weighted problem itself uses
/// the complete graph over all sites.
struct Instance {
  std::string id;
  std::uint64_t seed = 0;
  GenerationParams params;
  std::vector<Site> sites;
  std::vector<Bond> bonds;

  std::size_t size() const noexcept { return sites.size(); }

  /// Degree of every vertex over the bond set.
  std::vector<std::size_t> degrees() const;
  double mean_degree() const;
  double min_pairwise_distance() const;

  /// Checks finiteness, distinct sites and bond indices. Throws
  /// CoincidentSitesError, IndexError or DomainError.
  void validate() const;

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// Dense symmetric matrix of non-negative pair weights with zero diagonal.
class InteractionMatrix {
 public:
  InteractionMatrix() = default;

  /// Builds from a row-major n*n buffer. Throws DomainError unless the data
  /// is square, symmetric, finite, non-negative and zero on the diagonal.
  static InteractionMatrix from_dense(std::size_t n, std::vector<double> values);

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const noexcept {
    return values_[i * n_ + j];
  }
  std::span<const double> row(std::size_t i) const noexcept {
    return {values_.data() + i * n_, n_};
  }
  std::span<const double> data() const noexcept { return values_; }

  friend bool operator==(const InteractionMatrix&,
                         const InteractionMatrix&) = default;

 private:
  InteractionMatrix(std::size_t n, std::vector<double> values)
      : n_(n), values_(std::move(values)) {}

  std::size_t n_ = 0;
  std::vector<double> values_;
};

/// Draws n sites by rejection sampling at separation >= r_min inside the box,
/// then bonds mutual 4-nearest neighbours and repairs low-degree vertices.
/// Pure in (n, seed, params). Throws GenerationError if the box cannot hold
/// the sites, DomainError for n < 2 or non-positive parameters.
/// `max_attempts_per_site` only decides when to give up; it never changes a
/// successful result.
Instance generate(std::size_t n, std::uint64_t seed, const GenerationParams& params,
                  std::size_t max_attempts_per_site = 20000);
Instance generate(std::size_t n, std::uint64_t seed);

/// u_ij = 1/d_ij^6 over every site pair. Throws CoincidentSitesError.
InteractionMatrix interaction_matrix(const Instance& inst);
InteractionMatrix interaction_matrix(std::span<const Site> sites);

/// Serializes to the "bandopt-instance/1" JSON schema.
std::string to_json(const Instance& inst);
/// Parses and validates; throws FormatError / SchemaVersionError naming the
/// offending field, or CoincidentSitesError.
Instance instance_from_json(const std::string& text);

void save(const Instance& inst, const std::filesystem::path& path);
Instance load_instance(const std::filesystem::path& path);

}  // namespace bandopt
