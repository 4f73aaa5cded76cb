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

#include "bandopt/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <map>
#include <sstream>
#include <thread>

#include <fmt/format.h>
#include <json.hpp>

#include "bandopt/error.hpp"
#include "bandopt/rcm.hpp"

namespace bandopt {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct Job {
  std::size_t n;
  std::size_t replicate;
};

GapRow run_one(const Job& job, std::uint64_t seed0, const SolveConfig& cfg,
               const SuiteOptions& options, std::string& failure) {
  GapRow row;
  row.n = job.n;
  row.seed = suite_seed(seed0, job.n, job.replicate);
  row.id = fmt::format("n{}-r{}", job.n, job.replicate);

  Instance inst;
  try {
    inst = generate(job.n, row.seed);
  } catch (const Error& e) {
    row.status = "generation-failed";
    failure = fmt::format("{} (seed {}): {}", row.id, row.seed, e.what());
    return row;
  }

  try {
    const InteractionMatrix u = interaction_matrix(inst);
    const Ordering rcm = rcm_on_instance(inst);
    row.obj_rcm = weighted_bandwidth(u, rcm).value;

    SolveConfig main_cfg = cfg;
    main_cfg.initial_ordering = rcm;
    const SolveResult res = branch_and_bound(u, main_cfg);
    row.opt = res.objective;
    row.status = std::string(to_string(res.status));
    row.nodes_on = res.nodes_explored;
    row.wall_time_s = res.wall_time_s;
    if (res.objective > 0.0) row.gap_percent = rcm_gap(*row.obj_rcm, res.objective);

    if (options.ab_reinforcements) {
      SolveConfig off = main_cfg;
      off.use_lower_bound = false;
      off.use_symmetry_breaking = false;
      const SolveResult plain = branch_and_bound(u, off);
      if (plain.status == SolveStatus::optimal) {
        row.nodes_off = plain.nodes_explored;
        if (res.status == SolveStatus::optimal && plain.objective != res.objective) {
          row.status = "ab-mismatch";
          failure = fmt::format("{}: reinforced objective {} != plain objective {}",
                                row.id, res.objective, plain.objective);
        }
      }
    }

    if (options.oracle_check && job.n <= kBruteForceMaxN &&
        res.status == SolveStatus::optimal) {
      const SolveResult oracle = brute_force(u);
      if (oracle.objective != res.objective) {
        row.status = "oracle-mismatch";
        failure = fmt::format("{}: branch and bound {} != enumeration {}", row.id,
                              res.objective, oracle.objective);
      }
    }
  } catch (const Error& e) {
    row.status = "error";
    failure = fmt::format("{} (seed {}): {}", row.id, row.seed, e.what());
  }
  return row;
}

std::string fmt_opt(const std::optional<double>& v) {
  return v ? fmt::format("{:.12g}", *v) : std::string();
}
std::string fmt_opt(const std::optional<std::uint64_t>& v) {
  return v ? std::to_string(*v) : std::string();
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

double parse_double(const std::string& s, const char* column) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) throw FormatError(column, "not a number: " + s);
  return v;
}

std::uint64_t parse_u64(const std::string& s, const char* column) {
  char* end = nullptr;
  const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
  if (s.empty() || end != s.c_str() + s.size() || s.front() == '-')
    throw FormatError(column, "not an unsigned integer: " + s);
  return v;
}

std::optional<double> opt_double(const std::string& s, const char* column) {
  if (s.empty()) return std::nullopt;
  return parse_double(s, column);
}
std::optional<std::uint64_t> opt_u64(const std::string& s, const char* column) {
  if (s.empty()) return std::nullopt;
  return parse_u64(s, column);
}

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

GapStats stats_of(const std::vector<const GapRow*>& rows) {
  GapStats s;
  s.rows = rows.size();
  std::vector<double> gaps, reductions;
  double wall = 0.0;
  for (const GapRow* r : rows) {
    wall += r->wall_time_s;
    if (r->status != "optimal") continue;
    ++s.optimal;
    if (r->gap_percent) gaps.push_back(*r->gap_percent);
    if (r->nodes_on && r->nodes_off && *r->nodes_off > 0)
      reductions.push_back((static_cast<double>(*r->nodes_off) -
                            static_cast<double>(*r->nodes_on)) /
                           static_cast<double>(*r->nodes_off) * 100.0);
  }
  if (!gaps.empty()) {
    s.mean_gap = mean(gaps);
    s.median_gap = median(gaps);
  }
  if (!reductions.empty()) s.mean_node_reduction = mean(reductions);
  if (!rows.empty()) s.mean_wall_time_s = wall / static_cast<double>(rows.size());
  return s;
}

nlohmann::ordered_json stats_json(const GapStats& s) {
  nlohmann::ordered_json j;
  auto opt = [](const std::optional<double>& v) {
    return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
  };
  j["rows"] = s.rows;
  j["optimal"] = s.optimal;
  j["mean_gap_percent"] = opt(s.mean_gap);
  j["median_gap_percent"] = opt(s.median_gap);
  j["mean_node_reduction_percent"] = opt(s.mean_node_reduction);
  j["mean_wall_time_s"] = s.mean_wall_time_s;
  return j;
}

}  // namespace

std::uint64_t suite_seed(std::uint64_t seed0, std::size_t n, std::size_t replicate) {
  return seed0 + splitmix64((static_cast<std::uint64_t>(n) << 32) ^
                            static_cast<std::uint64_t>(replicate));
}

GapReport run_suite(const std::vector<std::size_t>& sizes, std::size_t per_size,
                    std::uint64_t seed0, const SolveConfig& cfg,
                    const SuiteOptions& options) {
  if (sizes.empty()) throw DomainError("suite needs at least one size");
  if (per_size == 0) throw DomainError("per_size must be at least 1");
  if (options.jobs == 0) throw DomainError("jobs must be at least 1");

  std::vector<Job> jobs;
  for (std::size_t n : sizes)
    for (std::size_t r = 0; r < per_size; ++r) jobs.push_back({n, r});

  std::vector<GapRow> rows(jobs.size());
  std::vector<std::string> failures(jobs.size());
  if (options.jobs == 1) {
    for (std::size_t k = 0; k < jobs.size(); ++k)
      rows[k] = run_one(jobs[k], seed0, cfg, options, failures[k]);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < std::min(options.jobs, jobs.size()); ++t)
      pool.emplace_back([&] {
        for (std::size_t k = next++; k < jobs.size(); k = next++)
          rows[k] = run_one(jobs[k], seed0, cfg, options, failures[k]);
      });
  }

  GapReport report;
  report.rows = std::move(rows);
  for (std::string& f : failures)
    if (!f.empty()) report.failures.push_back(std::move(f));
  return report;
}

std::string to_csv(const GapReport& report) {
  std::string out = std::string(kCsvHeader) + "\n";
  for (const GapRow& r : report.rows)
    out += fmt::format("{},{},{},{},{},{},{},{},{},{:.12g}\n", r.id, r.n, r.seed,
                       fmt_opt(r.obj_rcm), fmt_opt(r.opt), fmt_opt(r.gap_percent),
                       r.status, fmt_opt(r.nodes_on), fmt_opt(r.nodes_off),
                       r.wall_time_s);
  return out;
}

GapReport parse_gap_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader)
    throw FormatError("header", "expected " + std::string(kCsvHeader));
  GapReport report;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 10)
      throw FormatError("row", fmt::format("expected 10 columns, got {}", f.size()));
    GapRow r;
    r.id = f[0];
    r.n = parse_u64(f[1], "n");
    r.seed = parse_u64(f[2], "seed");
    r.obj_rcm = opt_double(f[3], "obj_rcm");
    r.opt = opt_double(f[4], "opt");
    r.gap_percent = opt_double(f[5], "gap_percent");
    r.status = f[6];
    r.nodes_on = opt_u64(f[7], "nodes_on");
    r.nodes_off = opt_u64(f[8], "nodes_off");
    r.wall_time_s = parse_double(f[9], "wall_time_s");
    report.rows.push_back(std::move(r));
  }
  return report;
}

SuiteSummary summarize(const GapReport& report) {
  if (report.rows.empty()) throw DomainError("cannot summarize an empty report");
  std::map<std::size_t, std::vector<const GapRow*>> by_size;
  std::vector<const GapRow*> all;
  for (const GapRow& r : report.rows) {
    by_size[r.n].push_back(&r);
    all.push_back(&r);
  }
  SuiteSummary s;
  for (const auto& [n, rows] : by_size) s.per_size.emplace_back(n, stats_of(rows));
  s.overall = stats_of(all);
  return s;
}

std::string to_json(const SuiteSummary& summary) {
  nlohmann::ordered_json j;
  j["schema"] = "bandopt-summary/1";
  auto sizes = nlohmann::ordered_json::array();
  for (const auto& [n, st] : summary.per_size) {
    auto e = stats_json(st);
    e["n"] = n;
    sizes.push_back(std::move(e));
  }
  j["sizes"] = std::move(sizes);
  j["overall"] = stats_json(summary.overall);
  return j.dump(2) + "\n";
}

}  // namespace bandopt
