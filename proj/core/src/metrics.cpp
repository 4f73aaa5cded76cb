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

#include "bandopt/metrics.hpp"

#include <fstream>
#include <numeric>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "bandopt/error.hpp"

namespace bandopt {

namespace {
constexpr const char* kOrderingSchema = "bandopt-ordering/1";

std::size_t distance(std::size_t a, std::size_t b) { return a > b ? a - b : b - a; }

void require_same_size(const InteractionMatrix& u, const Ordering& ord) {
  if (u.size() != ord.size())
    throw DomainError(fmt::format("matrix has {} vertices but ordering has {}",
                                  u.size(), ord.size()));
}
}  // namespace

Ordering Ordering::identity(std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), std::size_t{1});
  return Ordering(std::move(p));
}

Ordering Ordering::from_positions(std::vector<std::size_t> positions) {
  const std::size_t n = positions.size();
  std::vector<bool> used(n + 1, false);
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t p = positions[v];
    if (p < 1 || p > n)
      throw InvalidOrderingError(
          fmt::format("vertex {} has position {} outside 1..{}", v, p, n));
    if (used[p])
      throw InvalidOrderingError(fmt::format("position {} is used twice", p));
    used[p] = true;
  }
  return Ordering(std::move(positions));
}

Ordering Ordering::from_sequence(std::span<const std::size_t> sequence) {
  const std::size_t n = sequence.size();
  std::vector<std::size_t> p(n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t v = sequence[k];
    if (v >= n) throw InvalidOrderingError(fmt::format("vertex {} out of range", v));
    if (p[v] != 0)
      throw InvalidOrderingError(fmt::format("vertex {} appears twice", v));
    p[v] = k + 1;
  }
  return Ordering(std::move(p));
}

std::vector<std::size_t> Ordering::sequence() const {
  std::vector<std::size_t> seq(positions_.size());
  for (std::size_t v = 0; v < positions_.size(); ++v) seq[positions_[v] - 1] = v;
  return seq;
}

Ordering Ordering::reversed() const {
  const std::size_t n = positions_.size();
  std::vector<std::size_t> p(n);
  for (std::size_t v = 0; v < n; ++v) p[v] = n + 1 - positions_[v];
  return Ordering(std::move(p));
}

Ordering Ordering::inverse() const {
  std::vector<std::size_t> p(positions_.size());
  for (std::size_t v = 0; v < positions_.size(); ++v) p[positions_[v] - 1] = v + 1;
  return Ordering(std::move(p));
}

Bandwidth weighted_bandwidth(const InteractionMatrix& u, const Ordering& ord) {
  require_same_size(u, ord);
  Bandwidth bw;
  const std::size_t n = u.size();
  const auto pos = ord.positions();
  for (std::size_t a = 0; a < n; ++a) {
    const auto row = u.row(a);
    for (std::size_t b = a + 1; b < n; ++b) {
      const double term = row[b] * static_cast<double>(distance(pos[a], pos[b]));
      // strict comparison keeps the first (lexicographically smallest) pair
      if (!bw.argpair || term > bw.value) {
        bw.value = term;
        bw.argpair = {a, b};
      }
    }
  }
  return bw;
}

std::size_t classic_bandwidth(std::span<const Bond> bonds, const Ordering& ord) {
  std::size_t best = 0;
  for (const Bond& b : bonds) {
    if (b.first >= ord.size() || b.second >= ord.size())
      throw IndexError(fmt::format("bond ({},{}) out of range for {} vertices", b.first,
                                   b.second, ord.size()));
    best = std::max(best, distance(ord.position(b.first), ord.position(b.second)));
  }
  return best;
}

InteractionMatrix permute_matrix(const InteractionMatrix& u, const Ordering& ord) {
  require_same_size(u, ord);
  const std::size_t n = u.size();
  const auto pos = ord.positions();
  std::vector<double> m(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[(pos[i] - 1) * n + (pos[j] - 1)] = u(i, j);
  return InteractionMatrix::from_dense(n, std::move(m));
}

double rcm_gap(double obj_rcm, double opt) {
  if (!(opt > 0.0))
    throw DomainError(fmt::format("gap undefined for optimum {} <= 0", opt));
  return (obj_rcm - opt) / opt * 100.0;
}

std::string to_json(const Ordering& ord) {
  nlohmann::ordered_json j;
  j["schema"] = kOrderingSchema;
  j["perm"] = std::vector<std::size_t>(ord.positions().begin(), ord.positions().end());
  return j.dump() + "\n";
}

Ordering ordering_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError("", std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("schema")) throw FormatError("schema", "missing");
  if (j["schema"] != kOrderingSchema) {
    if (j["schema"].is_string() &&
        j["schema"].get<std::string>().rfind("bandopt-ordering/", 0) == 0)
      throw SchemaVersionError("schema", "unsupported ordering schema version");
    throw FormatError("schema", "not a bandopt ordering");
  }
  if (!j.contains("perm") || !j["perm"].is_array()) throw FormatError("perm", "missing");
  std::vector<std::size_t> perm;
  for (const auto& p : j["perm"]) {
    if (!p.is_number_unsigned()) throw FormatError("perm", "expected positive integers");
    perm.push_back(p.get<std::size_t>());
  }
  try {
    return Ordering::from_positions(std::move(perm));
  } catch (const InvalidOrderingError& e) {
    throw FormatError("perm", e.what());
  }
}

void save(const Ordering& ord, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << to_json(ord);
  if (!out) throw IoError("write failed: " + path.string());
}

Ordering load_ordering(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return ordering_from_json(buf.str());
}

std::string to_csv(const InteractionMatrix& u) {
  std::string out;
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (std::size_t j = 0; j < u.size(); ++j) {
      if (j) out += ',';
      out += fmt::format("{:.17g}", u(i, j));
    }
    out += '\n';
  }
  return out;
}

}  // namespace bandopt
