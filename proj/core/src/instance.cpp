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

#include "bandopt/instance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "bandopt/error.hpp"

namespace bandopt {
namespace {

constexpr const char* kInstanceSchema = "bandopt-instance/1";
constexpr double kTargetDegree = 4.0;
constexpr std::size_t kMinRepairedDegree = 3;

// std::uniform_real_distribution is implementation defined; this is not.
double unit_draw(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double squared_distance(const Site& a, const Site& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

/// Uniform cell grid of side >= r_min so a separation query touches at most
/// the 3x3 block around the candidate.
class SiteGrid {
 public:
  SiteGrid(double box_side, double cell_side)
      : cells_per_side_(std::max<std::size_t>(
            1, static_cast<std::size_t>(std::floor(box_side / cell_side)))),
        cell_side_(box_side / static_cast<double>(cells_per_side_)),
        cells_(cells_per_side_ * cells_per_side_) {}

  bool is_clear(const Site& s, std::span<const Site> sites, double r2) const {
    const auto [cx, cy] = cell_of(s);
    const std::size_t x0 = cx == 0 ? 0 : cx - 1;
    const std::size_t y0 = cy == 0 ? 0 : cy - 1;
    const std::size_t x1 = std::min(cx + 1, cells_per_side_ - 1);
    const std::size_t y1 = std::min(cy + 1, cells_per_side_ - 1);
    for (std::size_t gy = y0; gy <= y1; ++gy)
      for (std::size_t gx = x0; gx <= x1; ++gx)
        for (std::size_t k : cells_[gy * cells_per_side_ + gx])
          if (squared_distance(s, sites[k]) < r2) return false;
    return true;
  }

  void insert(const Site& s, std::size_t index) {
    const auto [cx, cy] = cell_of(s);
    cells_[cy * cells_per_side_ + cx].push_back(index);
  }

 private:
  std::pair<std::size_t, std::size_t> cell_of(const Site& s) const {
    auto clamp = [&](double c) {
      const auto k = static_cast<std::size_t>(std::max(0.0, c / cell_side_));
      return std::min(k, cells_per_side_ - 1);
    };
    return {clamp(s.x), clamp(s.y)};
  }

  std::size_t cells_per_side_;
  double cell_side_;
  std::vector<std::vector<std::size_t>> cells_;
};

/// Every other vertex sorted by (distance, index).
std::vector<std::size_t> neighbours_by_distance(std::span<const Site> sites,
                                                std::size_t v) {
  std::vector<std::size_t> order;
  order.reserve(sites.size() - 1);
  for (std::size_t w = 0; w < sites.size(); ++w)
    if (w != v) order.push_back(w);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double da = squared_distance(sites[v], sites[a]);
    const double db = squared_distance(sites[v], sites[b]);
    return da != db ? da < db : a < b;
  });
  return order;
}

/// Mutual k-nearest-neighbour pairs, then every vertex below the repair
/// degree is joined to its nearest non-neighbours.
std::vector<Bond> mutual_knn_bonds(const std::vector<std::vector<std::size_t>>& ranked,
                                   std::size_t k_wanted) {
  const std::size_t n = ranked.size();
  const std::size_t k = std::min(k_wanted, n - 1);
  auto in_knn = [&](std::size_t v, std::size_t w) {
    const auto& r = ranked[v];
    return std::find(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(k), w) !=
           r.begin() + static_cast<std::ptrdiff_t>(k);
  };

  std::set<Bond> bonds;
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t w = ranked[v][j];
      if (v < w && in_knn(w, v)) bonds.insert({v, w});
    }

  std::vector<std::size_t> degree(n, 0);
  for (const Bond& b : bonds) {
    ++degree[b.first];
    ++degree[b.second];
  }
  const std::size_t target = std::min(kMinRepairedDegree, n - 1);
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t w : ranked[v]) {
      if (degree[v] >= target) break;
      const Bond b{std::min(v, w), std::max(v, w)};
      if (bonds.insert(b).second) {
        ++degree[v];
        ++degree[w];
      }
    }
  }
  return {bonds.begin(), bonds.end()};
}

/// Mutual 4-NN undershoots C = 4 on most point sets and mutual 5-NN
/// overshoots it; keep whichever lands closer (4 on ties).
std::vector<Bond> build_bonds(std::span<const Site> sites) {
  const std::size_t n = sites.size();
  std::vector<std::vector<std::size_t>> ranked(n);
  for (std::size_t v = 0; v < n; ++v) ranked[v] = neighbours_by_distance(sites, v);

  auto deviation = [n](const std::vector<Bond>& b) {
    return std::abs(2.0 * static_cast<double>(b.size()) / static_cast<double>(n) -
                    kTargetDegree);
  };
  std::vector<Bond> four = mutual_knn_bonds(ranked, 4);
  std::vector<Bond> five = mutual_knn_bonds(ranked, 5);
  return deviation(five) < deviation(four) ? five : four;
}

}  // namespace

GenerationParams GenerationParams::defaults(std::size_t n) {
  return {std::sqrt(static_cast<double>(n)), 0.7};
}

std::vector<std::size_t> Instance::degrees() const {
  std::vector<std::size_t> deg(sites.size(), 0);
  for (const Bond& b : bonds) {
    ++deg.at(b.first);
    ++deg.at(b.second);
  }
  return deg;
}

double Instance::mean_degree() const {
  if (sites.empty()) return 0.0;
  return 2.0 * static_cast<double>(bonds.size()) / static_cast<double>(sites.size());
}

double Instance::min_pairwise_distance() const {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < sites.size(); ++i)
    for (std::size_t j = i + 1; j < sites.size(); ++j)
      best = std::min(best, squared_distance(sites[i], sites[j]));
  return std::sqrt(best);
}

void Instance::validate() const {
  for (std::size_t i = 0; i < sites.size(); ++i)
    if (!std::isfinite(sites[i].x) || !std::isfinite(sites[i].y))
      throw DomainError("site " + std::to_string(i) + " has a non-finite coordinate");
  for (std::size_t i = 0; i < sites.size(); ++i)
    for (std::size_t j = i + 1; j < sites.size(); ++j)
      if (sites[i] == sites[j]) throw CoincidentSitesError(i, j);
  for (const Bond& b : bonds) {
    if (b.first >= sites.size() || b.second >= sites.size())
      throw IndexError("bond (" + std::to_string(b.first) + "," +
                       std::to_string(b.second) + ") references a missing site");
    if (b.first >= b.second)
      throw DomainError("bond (" + std::to_string(b.first) + "," +
                        std::to_string(b.second) + ") is not ordered i < j");
  }
}

InteractionMatrix InteractionMatrix::from_dense(std::size_t n,
                                                std::vector<double> values) {
  if (values.size() != n * n)
    throw DomainError("interaction matrix needs " + std::to_string(n * n) +
                      " entries, got " + std::to_string(values.size()));
  for (std::size_t i = 0; i < n; ++i) {
    if (values[i * n + i] != 0.0)
      throw DomainError("interaction matrix diagonal entry " + std::to_string(i) +
                        " is not zero");
    for (std::size_t j = i + 1; j < n; ++j) {
      const double a = values[i * n + j];
      if (!std::isfinite(a) || a < 0.0)
        throw DomainError("interaction matrix entry (" + std::to_string(i) + "," +
                          std::to_string(j) + ") is negative or not finite");
      if (a != values[j * n + i])
        throw DomainError("interaction matrix is not symmetric at (" +
                          std::to_string(i) + "," + std::to_string(j) + ")");
    }
  }
  return InteractionMatrix(n, std::move(values));
}

Instance generate(std::size_t n, std::uint64_t seed, const GenerationParams& params,
                  std::size_t max_attempts_per_site) {
  if (n < 2) throw DomainError("generate needs n >= 2");
  if (!(params.box_side > 0.0) || !(params.r_min > 0.0) ||
      !std::isfinite(params.box_side) || !std::isfinite(params.r_min))
    throw DomainError("generation parameters L and r_min must be positive");

  std::mt19937_64 rng(seed);
  const double r2 = params.r_min * params.r_min;
  SiteGrid grid(params.box_side, params.r_min);

  Instance inst;
  inst.seed = seed;
  inst.params = params;
  inst.id = "n" + std::to_string(n) + "-s" + std::to_string(seed);
  inst.sites.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    bool placed = false;
    for (std::size_t attempt = 0; attempt < max_attempts_per_site; ++attempt) {
      const Site s{unit_draw(rng) * params.box_side, unit_draw(rng) * params.box_side};
      if (grid.is_clear(s, inst.sites, r2)) {
        grid.insert(s, inst.sites.size());
        inst.sites.push_back(s);
        placed = true;
        break;
      }
    }
    if (!placed) {
      std::ostringstream msg;
      msg << "could not place site " << k << " of " << n << " at separation "
          << params.r_min << " in a box of side " << params.box_side << " after "
          << max_attempts_per_site << " attempts";
      throw GenerationError(msg.str());
    }
  }
  inst.bonds = build_bonds(inst.sites);
  return inst;
}

Instance generate(std::size_t n, std::uint64_t seed) {
  return generate(n, seed, GenerationParams::defaults(n));
}

InteractionMatrix interaction_matrix(std::span<const Site> sites) {
  const std::size_t n = sites.size();
  std::vector<double> u(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d2 = squared_distance(sites[i], sites[j]);
      if (d2 == 0.0) throw CoincidentSitesError(i, j);
      const double w = 1.0 / (d2 * d2 * d2);
      u[i * n + j] = w;
      u[j * n + i] = w;
    }
  return InteractionMatrix::from_dense(n, std::move(u));
}

InteractionMatrix interaction_matrix(const Instance& inst) {
  return interaction_matrix(inst.sites);
}

std::string to_json(const Instance& inst) {
  nlohmann::ordered_json j;
  j["schema"] = kInstanceSchema;
  j["id"] = inst.id;
  j["seed"] = inst.seed;
  j["params"] = {{"L", inst.params.box_side}, {"r_min", inst.params.r_min}};
  auto sites = nlohmann::ordered_json::array();
  for (const Site& s : inst.sites) sites.push_back({s.x, s.y});
  j["sites"] = std::move(sites);
  auto bonds = nlohmann::ordered_json::array();
  for (const Bond& b : inst.bonds) bonds.push_back({b.first, b.second});
  j["bonds"] = std::move(bonds);
  return j.dump() + "\n";
}

namespace {

const nlohmann::json& require(const nlohmann::json& obj, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw FormatError(key, "missing");
  return *it;
}

double require_number(const nlohmann::json& v, const char* field) {
  if (!v.is_number()) throw FormatError(field, "expected a number");
  return v.get<double>();
}

std::size_t require_index(const nlohmann::json& v, const char* field) {
  if (!v.is_number_unsigned()) throw FormatError(field, "expected a vertex index");
  return v.get<std::size_t>();
}

}  // namespace

Instance instance_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError("", std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw FormatError("", "instance file must hold a JSON object");

  const auto& schema = require(j, "schema");
  if (!schema.is_string()) throw FormatError("schema", "expected a string");
  if (schema.get<std::string>() != kInstanceSchema) {
    if (schema.get<std::string>().rfind("bandopt-instance/", 0) == 0)
      throw SchemaVersionError("schema", "unsupported version " +
                                             schema.get<std::string>() +
                                             ", expected " + kInstanceSchema);
    throw FormatError("schema", "not a bandopt instance");
  }

  Instance inst;
  const auto& id = require(j, "id");
  if (!id.is_string()) throw FormatError("id", "expected a string");
  inst.id = id.get<std::string>();

  const auto& seed = require(j, "seed");
  if (!seed.is_number_unsigned()) throw FormatError("seed", "expected an unsigned integer");
  inst.seed = seed.get<std::uint64_t>();

  const auto& params = require(j, "params");
  if (!params.is_object()) throw FormatError("params", "expected an object");
  if (!params.contains("L")) throw FormatError("params.L", "missing");
  if (!params.contains("r_min")) throw FormatError("params.r_min", "missing");
  inst.params.box_side = require_number(params["L"], "params.L");
  inst.params.r_min = require_number(params["r_min"], "params.r_min");

  const auto& sites = require(j, "sites");
  if (!sites.is_array()) throw FormatError("sites", "expected an array");
  for (const auto& s : sites) {
    if (!s.is_array() || s.size() != 2)
      throw FormatError("sites", "each site must be [x, y]");
    inst.sites.push_back({require_number(s[0], "sites"), require_number(s[1], "sites")});
  }

  const auto& bonds = require(j, "bonds");
  if (!bonds.is_array()) throw FormatError("bonds", "expected an array");
  for (const auto& b : bonds) {
    if (!b.is_array() || b.size() != 2)
      throw FormatError("bonds", "each bond must be [i, j]");
    const Bond bond{require_index(b[0], "bonds"), require_index(b[1], "bonds")};
    if (bond.first >= bond.second) throw FormatError("bonds", "bond requires i < j");
    if (bond.second >= inst.sites.size())
      throw FormatError("bonds", "bond index " + std::to_string(bond.second) +
                                     " out of range");
    inst.bonds.push_back(bond);
  }
  if (!std::is_sorted(inst.bonds.begin(), inst.bonds.end()) ||
      std::adjacent_find(inst.bonds.begin(), inst.bonds.end()) != inst.bonds.end()) {
    std::sort(inst.bonds.begin(), inst.bonds.end());
    if (std::adjacent_find(inst.bonds.begin(), inst.bonds.end()) != inst.bonds.end())
      throw FormatError("bonds", "duplicate bond");
  }

  inst.validate();
  return inst;
}

void save(const Instance& inst, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << to_json(inst);
  if (!out) throw IoError("write failed: " + path.string());
}

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return instance_from_json(buf.str());
}

}  // namespace bandopt
