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

#include <catch2/catch_amalgamated.hpp>

#include <queue>
#include <random>
#include <set>

#include "bandopt/error.hpp"
#include "bandopt/rcm.hpp"
#include "fixtures.hpp"

using namespace bandopt;

namespace {

std::vector<Bond> random_graph(std::size_t n, double p, std::mt19937_64& rng) {
  std::vector<Bond> bonds;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (static_cast<double>(rng() >> 11) * 0x1.0p-53 < p) bonds.push_back({i, j});
  return bonds;
}

std::vector<std::size_t> bfs_levels(std::span<const Bond> bonds, std::size_t n,
                                    std::size_t root) {
  std::vector<std::vector<std::size_t>> adj(n);
  for (const Bond& b : bonds) {
    adj[b.first].push_back(b.second);
    adj[b.second].push_back(b.first);
  }
  std::vector<std::size_t> level(n, n);
  std::queue<std::size_t> q;
  level[root] = 0;
  q.push(root);
  while (!q.empty()) {
    const std::size_t v = q.front();
    q.pop();
    for (std::size_t w : adj[v])
      if (level[w] == n) {
        level[w] = level[v] + 1;
        q.push(w);
      }
  }
  return level;
}

}  // namespace

TEST_CASE("Cuthill-McKee on a path keeps its order", "[rcm]") {
  const std::vector<Bond> path{{0, 1}, {1, 2}};
  CHECK(cuthill_mckee(path, 3, 0) == Ordering::from_positions({1, 2, 3}));
  CHECK(reverse_cuthill_mckee(path, 3, 0) == Ordering::from_positions({3, 2, 1}));
  // default root: minimum degree, smallest index
  CHECK(cuthill_mckee(path, 3) == Ordering::from_positions({1, 2, 3}));
}

TEST_CASE("Cuthill-McKee on a star started at a leaf", "[rcm]") {
  // center 0, leaves 1..3, start at leaf 2: levels {2}, {0}, {1, 3}
  const std::vector<Bond> star{{0, 1}, {0, 2}, {0, 3}};
  const Ordering cm = cuthill_mckee(star, 4, 2);
  CHECK(cm.sequence() == std::vector<std::size_t>{2, 0, 1, 3});
}

TEST_CASE("levels are sorted by degree then index", "[rcm]") {
  // root 0 has neighbours 1 (degree 3), 2 (degree 1), 3 (degree 2); the
  // second level {4, 5, 6} is sorted as a whole, not per parent
  const std::vector<Bond> g{{0, 1}, {0, 2}, {0, 3}, {1, 4}, {1, 5}, {3, 6}};
  const Ordering cm = cuthill_mckee(g, 7, 0);
  CHECK(cm.sequence() == std::vector<std::size_t>{0, 2, 3, 1, 4, 5, 6});
}

TEST_CASE("no bonds falls back to index order", "[rcm]") {
  CHECK(cuthill_mckee({}, 3) == Ordering::identity(3));
  CHECK(reverse_cuthill_mckee({}, 3) == Ordering::identity(3).reversed());
}

TEST_CASE("disconnected components start at their minimum-degree root", "[rcm]") {
  // vertex 0 isolated (degree 0) goes first, then the path 1-2-3 from 1
  const std::vector<Bond> g{{1, 2}, {2, 3}};
  CHECK(cuthill_mckee(g, 4).sequence() == std::vector<std::size_t>{0, 1, 2, 3});

  // explicit start in the star, then the pair 4-5
  const std::vector<Bond> h{{0, 1}, {0, 2}, {0, 3}, {4, 5}};
  CHECK(cuthill_mckee(h, 6, 1).sequence() == std::vector<std::size_t>{1, 0, 2, 3, 4, 5});
}

TEST_CASE("invalid vertex indices", "[rcm]") {
  const std::vector<Bond> bad{{0, 5}};
  CHECK_THROWS_AS(cuthill_mckee(bad, 3), IndexError);
  CHECK_THROWS_AS(cuthill_mckee({}, 3, 3), IndexError);
}

TEST_CASE("RCM is a deterministic bijection with level structure", "[rcm][property]") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = 1 + static_cast<std::size_t>(rng() % 30);
    const auto bonds = random_graph(n, 0.15, rng);
    const Ordering r = reverse_cuthill_mckee(bonds, n);
    std::set<std::size_t> seen(r.positions().begin(), r.positions().end());
    CHECK(seen.size() == n);
    CHECK(r == reverse_cuthill_mckee(bonds, n));
  }
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Instance inst = generate(40, seed);
    const Ordering cm = cuthill_mckee(inst.bonds, inst.size());
    const auto seq = cm.sequence();
    const auto level = bfs_levels(inst.bonds, inst.size(), seq.front());
    if (std::find(level.begin(), level.end(), inst.size()) != level.end())
      continue;  // disconnected
    for (std::size_t k = 0; k + 1 < seq.size(); ++k) {
      const std::size_t a = level[seq[k]], b = level[seq[k + 1]];
      CHECK((b == a || b == a + 1));
    }
  }
}

TEST_CASE("RCM on instances", "[rcm]") {
  const Instance two = testing::pair_at(1.0);
  const InteractionMatrix u2 = interaction_matrix(two);
  const Ordering r2 = rcm_on_instance(two);
  CHECK(weighted_bandwidth(u2, r2).value == weighted_bandwidth(u2, r2.reversed()).value);

  const Instance inst = generate(10, 3);
  CHECK(rcm_on_instance(inst) == rcm_on_instance(generate(10, 3)));
  const InteractionMatrix u = interaction_matrix(inst);
  const double opt = testing::heap_enumeration_optimum(u);
  CHECK(rcm_gap(weighted_bandwidth(u, rcm_on_instance(inst)).value, opt) >= 0.0);
}

TEST_CASE("RCM never beats the enumerated optimum", "[rcm][oracle]") {
  for (const Instance& inst : testing::regression_suite(3, 9, 3)) {
    const InteractionMatrix u = interaction_matrix(inst);
    CHECK(weighted_bandwidth(u, rcm_on_instance(inst)).value >=
          testing::heap_enumeration_optimum(u));
  }
}
