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

#include "bandopt/exact.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <mutex>
#include <numeric>
#include <thread>
#include <vector>

#include <fmt/format.h>
#include <json.hpp>

#include "bandopt/error.hpp"

namespace bandopt {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

/// Best known solution, shared by all workers. Updates only land if they
/// strictly improve the stored objective.
class Incumbent {
 public:
  Incumbent(double objective, std::vector<std::size_t> sequence)
      : value_(objective), sequence_(std::move(sequence)) {}

  double value() const noexcept { return value_.load(std::memory_order_acquire); }

  bool try_improve(double objective, std::span<const std::size_t> sequence) {
    std::lock_guard lock(mutex_);
    if (!(objective < value_.load(std::memory_order_relaxed))) return false;
    sequence_.assign(sequence.begin(), sequence.end());
    value_.store(objective, std::memory_order_release);
    return true;
  }

  std::vector<std::size_t> sequence() const {
    std::lock_guard lock(mutex_);
    return sequence_;
  }

 private:
  std::atomic<double> value_;
  mutable std::mutex mutex_;
  std::vector<std::size_t> sequence_;
};

struct SearchShared {
  const InteractionMatrix& u;
  std::size_t n;
  std::optional<std::size_t> anchor;
  std::size_t anchor_deadline;  // last position the anchor may take
  std::optional<double> stop_at;  // objective that proves optimality
  Clock::time_point started;
  double time_limit_s;
  std::optional<std::uint64_t> node_limit;
  Incumbent incumbent;
  std::atomic<bool> stop{false};
  std::atomic<bool> limit_hit{false};
  std::atomic<std::uint64_t> nodes{0};
};

/// Depth-first search state of one worker.
class Searcher {
 public:
  explicit Searcher(SearchShared& shared)
      : s_(shared),
        pos_(shared.n, 0),
        seq_(),
        candidates_(shared.n + 1) {
    seq_.reserve(shared.n);
  }

  ~Searcher() { s_.nodes.fetch_add(local_nodes_, std::memory_order_relaxed); }

  /// Places `v` at the next position and searches below it, unless pruned.
  void branch(std::size_t v, double partial) {
    place(v);
    visit(partial);
    unplace(v);
  }

  void visit(double partial) {
    ++local_nodes_;
    if (hit_limit()) return;

    const std::size_t depth = seq_.size();
    if (depth == s_.n) {
      if (s_.incumbent.try_improve(partial, seq_) && s_.stop_at &&
          partial == *s_.stop_at)
        s_.stop.store(true, std::memory_order_relaxed);
      return;
    }

    auto& cand = candidates_[depth];
    expand(partial, cand);
    for (const Candidate& c : cand) {
      if (s_.stop.load(std::memory_order_relaxed)) return;
      if (c.partial >= s_.incumbent.value()) continue;
      branch(c.vertex, c.partial);
    }
  }

  /// Counts the root and returns its children instead of descending.
  template <typename Out>
  void expand_root(Out& jobs) {
    ++local_nodes_;
    expand(0.0, jobs);
  }

  struct Candidate {
    std::size_t vertex;
    double strength;  // max interaction with placed vertices
    double partial;   // partial objective after placing the vertex
  };

  /// Children of the current node in branching order: strongest interaction
  /// with the placed prefix first, ties by index.
  void expand(double partial, std::vector<Candidate>& out) const {
    out.clear();
    const std::size_t next = seq_.size() + 1;
    const bool anchor_forced = s_.anchor && pos_[*s_.anchor] == 0 &&
                               next == s_.anchor_deadline;
    for (std::size_t v = 0; v < s_.n; ++v) {
      if (pos_[v] != 0) continue;
      if (anchor_forced && v != *s_.anchor) continue;
      const auto row = s_.u.row(v);
      double strength = 0.0;
      double worst = partial;
      for (std::size_t w : seq_) {
        strength = std::max(strength, row[w]);
        worst = std::max(worst, row[w] * static_cast<double>(next - pos_[w]));
      }
      out.push_back({v, strength, worst});
    }
    std::sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
      return a.strength != b.strength ? a.strength > b.strength : a.vertex < b.vertex;
    });
  }

  void place(std::size_t v) {
    seq_.push_back(v);
    pos_[v] = seq_.size();
  }
  void unplace(std::size_t v) {
    pos_[v] = 0;
    seq_.pop_back();
  }

 private:
  bool hit_limit() {
    if (s_.stop.load(std::memory_order_relaxed)) return true;
    if (s_.node_limit &&
        s_.nodes.load(std::memory_order_relaxed) + local_nodes_ > *s_.node_limit) {
      flag_limit();
      return true;
    }
    if ((local_nodes_ & 0xfff) == 0 && seconds_since(s_.started) > s_.time_limit_s) {
      flag_limit();
      return true;
    }
    return false;
  }

  void flag_limit() {
    s_.limit_hit.store(true, std::memory_order_relaxed);
    s_.stop.store(true, std::memory_order_relaxed);
  }

  SearchShared& s_;
  std::vector<std::size_t> pos_;  // 1-based, 0 = unplaced
  std::vector<std::size_t> seq_;
  std::vector<std::vector<Candidate>> candidates_;
  std::uint64_t local_nodes_ = 0;
};

double ordering_objective(const InteractionMatrix& u, std::span<const std::size_t> pos) {
  double best = 0.0;
  const std::size_t n = u.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      best = std::max(
          best, u(a, b) * static_cast<double>(pos[a] > pos[b] ? pos[a] - pos[b]
                                                             : pos[b] - pos[a]));
  return best;
}

}  // namespace

std::string_view to_string(SolveStatus s) noexcept {
  switch (s) {
    case SolveStatus::optimal:
      return "optimal";
    case SolveStatus::feasible_timeout:
      return "feasible-timeout";
  }
  return "unknown";
}

SolveStatus status_from_string(std::string_view s) {
  if (s == "optimal") return SolveStatus::optimal;
  if (s == "feasible-timeout") return SolveStatus::feasible_timeout;
  throw DomainError(fmt::format("unknown solve status \"{}\"", s));
}

void SolveConfig::validate(std::size_t n) const {
  if (!(time_limit_s > 0.0)) throw DomainError("time limit must be positive");
  if (threads == 0) throw DomainError("threads must be at least 1");
  if (anchor_vertex && *anchor_vertex >= n)
    throw DomainError(fmt::format("anchor vertex {} out of range for {} vertices",
                                  *anchor_vertex, n));
  if (initial_ordering && initial_ordering->size() != n)
    throw DomainError("initial ordering size does not match the matrix");
}

double theoretical_lower_bound(const InteractionMatrix& u) {
  if (u.size() < 2) throw DomainError("lower bound needs at least two vertices");
  double best = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = i + 1; j < u.size(); ++j) best = std::max(best, u(i, j));
  return best;
}

std::size_t default_anchor(const InteractionMatrix& u) {
  std::size_t anchor = 0;
  double best = -1.0;
  for (std::size_t v = 0; v < u.size(); ++v) {
    const auto row = u.row(v);
    const double sum = std::accumulate(row.begin(), row.end(), 0.0);
    if (sum > best) {
      best = sum;
      anchor = v;
    }
  }
  return anchor;
}

SolveResult brute_force(const InteractionMatrix& u) {
  const std::size_t n = u.size();
  if (n == 0) throw DomainError("brute force needs at least one vertex");
  if (n > kBruteForceMaxN)
    throw DomainError(fmt::format("brute force refuses n = {} > {}", n, kBruteForceMaxN));

  const auto t0 = Clock::now();
  std::vector<std::size_t> pos(n);
  std::iota(pos.begin(), pos.end(), std::size_t{1});
  std::vector<std::size_t> best_pos = pos;
  double best = std::numeric_limits<double>::infinity();
  std::uint64_t count = 0;
  do {
    ++count;
    double obj = 0.0;
    for (std::size_t a = 0; a < n && obj < best; ++a) {
      const auto row = u.row(a);
      for (std::size_t b = a + 1; b < n; ++b) {
        const std::size_t d = pos[a] > pos[b] ? pos[a] - pos[b] : pos[b] - pos[a];
        obj = std::max(obj, row[b] * static_cast<double>(d));
      }
    }
    // lexicographic enumeration + strict improvement = smallest optimal vector
    if (obj < best) {
      best = obj;
      best_pos = pos;
    }
  } while (std::next_permutation(pos.begin(), pos.end()));

  SolveResult r;
  r.ordering = Ordering::from_positions(std::move(best_pos));
  r.objective = best;
  r.lower_bound = best;
  r.status = SolveStatus::optimal;
  r.nodes_explored = count;
  r.wall_time_s = seconds_since(t0);
  return r;
}

SolveResult branch_and_bound(const InteractionMatrix& u, const SolveConfig& cfg) {
  const std::size_t n = u.size();
  if (n == 0) throw DomainError("branch and bound needs at least one vertex");
  cfg.validate(n);
  const auto t0 = Clock::now();

  std::optional<std::size_t> anchor;
  if (cfg.use_symmetry_breaking && n >= 2)
    anchor = cfg.anchor_vertex.value_or(default_anchor(u));
  const std::size_t half = (n + 1) / 2;

  Ordering start = cfg.initial_ordering.value_or(Ordering::identity(n));
  // A reversed warm start has the same objective and respects the anchor rule.
  if (anchor && start.position(*anchor) > half) start = start.reversed();
  const double start_obj = ordering_objective(u, start.positions());

  std::optional<double> bound;
  if (n >= 2) bound = theoretical_lower_bound(u);

  SearchShared shared{u,
                      n,
                      anchor,
                      half,
                      cfg.use_lower_bound ? bound : std::nullopt,
                      t0,
                      cfg.time_limit_s,
                      cfg.node_limit,
                      Incumbent(start_obj, start.sequence())};

  // Nothing to search: a single vertex, an all-zero matrix, or a warm start
  // that already meets the bound.
  const bool proven = n == 1 || start_obj == 0.0 ||
                      (shared.stop_at && start_obj == *shared.stop_at);
  if (!proven) {
    if (cfg.threads <= 1) {
      Searcher root(shared);
      root.visit(0.0);
    } else {
      // Root expanded here; its children are independent jobs.
      std::vector<Searcher::Candidate> jobs;
      {
        Searcher root(shared);
        root.expand_root(jobs);
      }
      std::atomic<std::size_t> next{0};
      std::vector<std::jthread> workers;
      const std::size_t k = std::min(cfg.threads, jobs.size());
      for (std::size_t t = 0; t < k; ++t)
        workers.emplace_back([&] {
          Searcher s(shared);
          for (std::size_t j = next++; j < jobs.size(); j = next++) {
            if (shared.stop.load(std::memory_order_relaxed)) break;
            if (jobs[j].partial >= shared.incumbent.value()) continue;
            s.branch(jobs[j].vertex, jobs[j].partial);
          }
        });
    }
  }

  SolveResult r;
  r.ordering = Ordering::from_sequence(shared.incumbent.sequence());
  r.objective = shared.incumbent.value();
  r.status = shared.limit_hit.load() ? SolveStatus::feasible_timeout : SolveStatus::optimal;
  r.lower_bound = r.status == SolveStatus::optimal ? r.objective : bound.value_or(0.0);
  r.nodes_explored = shared.nodes.load();
  r.wall_time_s = seconds_since(t0);
  return r;
}

std::string lp_model(const InteractionMatrix& u, const SolveConfig& cfg) {
  const std::size_t n = u.size();
  if (n < 2) throw DomainError("LP export needs at least two vertices");
  cfg.validate(n);

  auto x = [](std::size_t v, std::size_t i) { return fmt::format("x_v{}_i{}", v, i); };
  std::string out;
  auto row = [&out](const std::string& name, const std::vector<std::string>& terms,
                    const std::string& sense_rhs) {
    out += ' ' + name + ':';
    for (std::size_t k = 0; k < terms.size(); ++k) {
      if (k && k % 8 == 0) out += "\n   ";
      out += ' ' + terms[k];
    }
    out += ' ' + sense_rhs + '\n';
  };
  auto signed_term = [](bool first, double coef, const std::string& var) {
    const char* sign = coef < 0 ? "-" : (first ? "" : "+");
    const double mag = std::abs(coef);
    if (mag == 1.0) return fmt::format("{}{}{}", sign, first && coef >= 0 ? "" : " ", var);
    return fmt::format("{}{}{:.17g} {}", sign, first && coef >= 0 ? "" : " ", mag, var);
  };

  out += fmt::format("\\ weighted bandwidth minimization, n = {}\n", n);
  out += "Minimize\n obj: b\nSubject To\n";
  for (std::size_t i = 1; i <= n; ++i) {
    std::vector<std::string> terms;
    for (std::size_t v = 0; v < n; ++v) terms.push_back(signed_term(v == 0, 1.0, x(v, i)));
    row(fmt::format("pos{}", i), terms, "= 1");
  }
  for (std::size_t v = 0; v < n; ++v) {
    std::vector<std::string> terms;
    for (std::size_t i = 1; i <= n; ++i) terms.push_back(signed_term(i == 1, 1.0, x(v, i)));
    row(fmt::format("vtx{}", v), terms, "= 1");
  }
  // sum_i i x_a^i - sum_i i x_b^i <= b / u_ab; rows for a zero weight would
  // carry an infinite coefficient and are omitted.
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b || u(a, b) == 0.0) continue;
      std::vector<std::string> terms;
      for (std::size_t i = 1; i <= n; ++i)
        terms.push_back(signed_term(i == 1, static_cast<double>(i), x(a, i)));
      for (std::size_t i = 1; i <= n; ++i)
        terms.push_back(signed_term(false, -static_cast<double>(i), x(b, i)));
      terms.push_back(signed_term(false, -1.0 / u(a, b), "b"));
      row(fmt::format("bw_{}_{}", a, b), terms, "<= 0");
    }
  if (cfg.use_lower_bound)
    row("lb", {"b"}, fmt::format(">= {:.17g}", theoretical_lower_bound(u)));
  if (cfg.use_symmetry_breaking) {
    const std::size_t anchor = cfg.anchor_vertex.value_or(default_anchor(u));
    std::vector<std::string> terms;
    for (std::size_t i = 1; i <= n; ++i)
      terms.push_back(signed_term(i == 1, static_cast<double>(i), x(anchor, i)));
    row("sym", terms, fmt::format("<= {}", (n + 1) / 2));
  }
  out += "Bounds\n b >= 0\nBinaries\n";
  for (std::size_t v = 0; v < n; ++v) {
    out += ' ';
    for (std::size_t i = 1; i <= n; ++i) out += ' ' + x(v, i);
    out += '\n';
  }
  out += "End\n";
  return out;
}

void export_lp(const InteractionMatrix& u, const SolveConfig& cfg,
               const std::filesystem::path& path) {
  const std::string text = lp_model(u, cfg);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw IoError("write failed: " + path.string());
}

std::string to_json(const SolveResult& r) {
  nlohmann::ordered_json j;
  j["schema"] = "bandopt-result/1";
  j["objective"] = r.objective;
  j["lower_bound"] = r.lower_bound;
  j["status"] = std::string(to_string(r.status));
  j["nodes"] = r.nodes_explored;
  j["wall_time_s"] = r.wall_time_s;
  j["ordering"] =
      std::vector<std::size_t>(r.ordering.positions().begin(), r.ordering.positions().end());
  return j.dump() + "\n";
}

}  // namespace bandopt
