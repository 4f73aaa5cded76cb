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

/// \file rcm.hpp
/// \brief (Reverse) Cuthill-McKee ordering of the sparse bond graph.
///
/// Interaction magnitudes are ignored; only the bond structure is used.

#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "bandopt/instance.hpp"
#include "bandopt/metrics.hpp"

namespace bandopt {

/// Breadth-first level ordering. Inside a level, vertices are sorted by
/// (degree, index). Without `start`, and for every further component, the
/// root is the unvisited vertex of minimum degree (ties by index).
/// Throws IndexError for bonds outside [0, n) or an invalid start.
Ordering cuthill_mckee(std::span<const Bond> bonds, std::size_t n,
                       std::optional<std::size_t> start = std::nullopt);

/// cuthill_mckee with positions reversed.
Ordering reverse_cuthill_mckee(std::span<const Bond> bonds, std::size_t n,
                               std::optional<std::size_t> start = std::nullopt);

Ordering rcm_on_instance(const Instance& inst);

}  // namespace bandopt
