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

#include "fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>

#include "bandopt/harness.hpp"

namespace bandopt::testing {

Instance instance_of(std::vector<Site> sites, std::vector<Bond> bonds) {
  Instance inst;
  inst.id = "fixture";
  inst.sites = std::move(sites);
  inst.bonds = std::move(bonds);
  return inst;
}

Instance pair_at(double d) { return instance_of({{0.0, 0.0}, {d, 0.0}}, {{0, 1}}); }

Instance collinear3() {
  return instance_of({{0.0, 0.0}, {1.0, 0.0}, {3.0, 0.0}}, {{0, 1}, {1, 2}});
}

Instance triangle() {
  return instance_of({{0.0, 0.0}, {1.0, 0.0}, {0.5, std::sqrt(3.0) / 2.0}},
                     {{0, 1}, {0, 2}, {1, 2}});
}

InteractionMatrix random_matrix(std::size_t n, std::mt19937_64& rng) {
  std::vector<double> v(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      // 1 - [0,1) keeps entries strictly positive
      const double w = 1.0 - static_cast<double>(rng() >> 11) * 0x1.0p-53;
      v[i * n + j] = w;
      v[j * n + i] = w;
    }
  return InteractionMatrix::from_dense(n, std::move(v));
}

Ordering random_ordering(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::size_t> seq(n);
  std::iota(seq.begin(), seq.end(), std::size_t{0});
  for (std::size_t i = n; i > 1; --i) std::swap(seq[i - 1], seq[rng() % i]);
  return Ordering::from_sequence(seq);
}

double naive_objective(const InteractionMatrix& u, const std::vector<std::size_t>& pos) {
  double best = 0.0;
  for (std::size_t a = 0; a < u.size(); ++a)
    for (std::size_t b = 0; b < u.size(); ++b) {
      if (a == b) continue;
      const long long d = std::llabs(static_cast<long long>(pos[a]) -
                                     static_cast<long long>(pos[b]));
      best = std::max(best, u(a, b) * static_cast<double>(d));
    }
  return best;
}

double heap_enumeration_optimum(const InteractionMatrix& u) {
  const std::size_t n = u.size();
  std::vector<std::size_t> pos(n);
  std::iota(pos.begin(), pos.end(), std::size_t{1});
  double best = naive_objective(u, pos);
  std::vector<std::size_t> c(n, 0);
  std::size_t i = 1;
  while (i < n) {
    if (c[i] < i) {
      std::swap(pos[i % 2 == 0 ? 0 : c[i]], pos[i]);
      best = std::min(best, naive_objective(u, pos));
      ++c[i];
      i = 1;
    } else {
      c[i] = 0;
      ++i;
    }
  }
  return best;
}

std::vector<Instance> regression_suite(std::size_t n_lo, std::size_t n_hi,
                                       std::size_t per_size) {
  std::vector<Instance> out;
  for (std::size_t n = n_lo; n <= n_hi; ++n)
    for (std::size_t r = 0; r < per_size; ++r) out.push_back(generate(n, suite_seed(20260, n, r)));
  return out;
}

}  // namespace bandopt::testing
