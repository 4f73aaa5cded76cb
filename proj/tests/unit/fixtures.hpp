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

// Shared fixtures and test-only oracles. Nothing here calls into the code
// paths it is used to check.

#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "bandopt/instance.hpp"
#include "bandopt/metrics.hpp"

namespace bandopt::testing {

Instance instance_of(std::vector<Site> sites, std::vector<Bond> bonds = {});

/// Two sites at distance d.
Instance pair_at(double d);
/// Sites A, B, C at x = 0, 1, 3.
Instance collinear3();
/// Unit-side equilateral triangle.
Instance triangle();

/// Random symmetric matrix with zero diagonal and entries in (0, 1].
InteractionMatrix random_matrix(std::size_t n, std::mt19937_64& rng);
/// Uniformly random ordering.
Ordering random_ordering(std::size_t n, std::mt19937_64& rng);

/// max over ordered pairs (a, b), a != b, of u_ab * |pos_a - pos_b|, with the
/// distance computed through signed arithmetic.
double naive_objective(const InteractionMatrix& u, const std::vector<std::size_t>& pos);

/// Minimum objective over all orderings, enumerated with Heap's algorithm.
double heap_enumeration_optimum(const InteractionMatrix& u);

/// Fixed regression suite: suite_seed(20260, n, r) for n in [n_lo, n_hi],
/// r < per_size.
std::vector<Instance> regression_suite(std::size_t n_lo, std::size_t n_hi,
                                       std::size_t per_size);

}  // namespace bandopt::testing
