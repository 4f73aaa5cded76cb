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

#include "bandopt/rcm.hpp"

#include <algorithm>
#include <vector>

#include <fmt/format.h>

#include "bandopt/error.hpp"

namespace bandopt {

Ordering cuthill_mckee(std::span<const Bond> bonds, std::size_t n,
                       std::optional<std::size_t> start) {
  std::vector<std::vector<std::size_t>> adj(n);
  for (const Bond& b : bonds) {
    if (b.first >= n || b.second >= n)
      throw IndexError(
          fmt::format("bond ({},{}) out of range for {} vertices", b.first, b.second, n));
    if (b.first == b.second) continue;
    adj[b.first].push_back(b.second);
    adj[b.second].push_back(b.first);
  }
  for (auto& a : adj) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  if (start && *start >= n)
    throw IndexError(fmt::format("start vertex {} out of range", *start));

  auto by_degree = [&](std::size_t a, std::size_t b) {
    return adj[a].size() != adj[b].size() ? adj[a].size() < adj[b].size() : a < b;
  };

  std::vector<bool> visited(n, false);
  std::vector<std::size_t> sequence;
  sequence.reserve(n);
  std::vector<std::size_t> level, next;

  while (sequence.size() < n) {
    std::size_t root;
    if (sequence.empty() && start) {
      root = *start;
    } else {
      root = n;
      for (std::size_t v = 0; v < n; ++v)
        if (!visited[v] && (root == n || by_degree(v, root))) root = v;
    }
    visited[root] = true;
    level.assign(1, root);
    while (!level.empty()) {
      sequence.insert(sequence.end(), level.begin(), level.end());
      next.clear();
      for (std::size_t v : level)
        for (std::size_t w : adj[v])
          if (!visited[w]) {
            visited[w] = true;
            next.push_back(w);
          }
      std::sort(next.begin(), next.end(), by_degree);
      level.swap(next);
    }
  }
  return Ordering::from_sequence(sequence);
}

Ordering reverse_cuthill_mckee(std::span<const Bond> bonds, std::size_t n,
                               std::optional<std::size_t> start) {
  return cuthill_mckee(bonds, n, start).reversed();
}

Ordering rcm_on_instance(const Instance& inst) {
  return reverse_cuthill_mckee(inst.bonds, inst.size());
}

}  // namespace bandopt
