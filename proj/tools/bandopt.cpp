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

// bandopt: generate instances, order them with RCM or the exact solver,
// export the MILP and run benchmark suites.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "bandopt/error.hpp"
#include "bandopt/exact.hpp"
#include "bandopt/harness.hpp"
#include "bandopt/instance.hpp"
#include "bandopt/metrics.hpp"
#include "bandopt/rcm.hpp"

namespace fs = std::filesystem;
using namespace bandopt;

namespace {

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw IoError("write failed: " + path.string());
}

struct GenArgs {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::size_t count = 1;
  std::optional<double> box_side;
  std::optional<double> r_min;
  std::string out;
};

void run_gen(const GenArgs& a) {
  GenerationParams params = GenerationParams::defaults(a.n);
  if (a.box_side) params.box_side = *a.box_side;
  if (a.r_min) params.r_min = *a.r_min;
  if (a.count == 1) {
    save(generate(a.n, a.seed, params), a.out);
    return;
  }
  // Several instances: --out names a directory, seeds run seed, seed+1, ...
  fs::create_directories(a.out);
  for (std::size_t k = 0; k < a.count; ++k) {
    const Instance inst = generate(a.n, a.seed + k, params);
    save(inst, fs::path(a.out) / (inst.id + ".json"));
  }
}

struct SolveArgs {
  std::string instance;
  std::string out;
  bool no_lb = false;
  bool no_sym = false;
  double time_limit = 3600.0;
  std::optional<std::uint64_t> node_limit;
  std::optional<std::size_t> anchor;
  std::size_t threads = 1;
  std::string method = "bnb";
};

SolveConfig config_of(const SolveArgs& a) {
  SolveConfig cfg;
  cfg.use_lower_bound = !a.no_lb;
  cfg.use_symmetry_breaking = !a.no_sym;
  cfg.time_limit_s = a.time_limit;
  cfg.node_limit = a.node_limit;
  cfg.anchor_vertex = a.anchor;
  cfg.threads = a.threads;
  return cfg;
}

void run_solve(const SolveArgs& a) {
  const Instance inst = load_instance(a.instance);
  const InteractionMatrix u = interaction_matrix(inst);
  SolveResult r;
  if (a.method == "brute") {
    r = brute_force(u);
  } else {
    SolveConfig cfg = config_of(a);
    cfg.initial_ordering = rcm_on_instance(inst);
    r = branch_and_bound(u, cfg);
  }
  write_text(a.out, to_json(r));
  std::cout << fmt::format("{} objective={:.12g} nodes={} time={:.3f}s\n",
                           to_string(r.status), r.objective, r.nodes_explored,
                           r.wall_time_s);
}

void run_export_lp(const SolveArgs& a) {
  const Instance inst = load_instance(a.instance);
  export_lp(interaction_matrix(inst), config_of(a), a.out);
}

struct EvalArgs {
  std::string instance;
  std::string ordering;
  std::string matrix_out;
};

void run_eval(const EvalArgs& a) {
  const Instance inst = load_instance(a.instance);
  const InteractionMatrix u = interaction_matrix(inst);
  const Ordering ord = a.ordering.empty() ? Ordering::identity(inst.size())
                                          : load_ordering(a.ordering);
  const Bandwidth bw = weighted_bandwidth(u, ord);
  std::cout << fmt::format("weighted_bandwidth={:.17g}", bw.value);
  if (bw.argpair) std::cout << fmt::format(" pair=({},{})", bw.argpair->first, bw.argpair->second);
  std::cout << fmt::format(" classic_bandwidth={}\n", classic_bandwidth(inst.bonds, ord));
  if (!a.matrix_out.empty()) write_text(a.matrix_out, to_csv(permute_matrix(u, ord)));
}

struct BenchArgs {
  std::vector<std::size_t> sizes{kDeskScaleSizes};
  std::size_t per_size = 10;
  std::uint64_t seed = 42;
  bool ab = false;
  bool paper_scale = false;
  bool oracle = false;
  double time_limit = 600.0;
  std::size_t jobs = 1;
  std::size_t threads = 1;
  std::string out;
  std::string summary_out;
};

int run_bench(BenchArgs a, bool sizes_given) {
  if (a.paper_scale && !sizes_given) a.sizes = kPaperScaleSizes;
  SolveConfig cfg;
  cfg.time_limit_s = a.time_limit;
  cfg.threads = a.threads;
  SuiteOptions opts;
  opts.ab_reinforcements = a.ab;
  opts.oracle_check = a.oracle;
  opts.jobs = a.jobs;

  const GapReport report = run_suite(a.sizes, a.per_size, a.seed, cfg, opts);
  write_text(a.out, to_csv(report));
  fs::path summary = a.summary_out;
  if (summary.empty()) summary = fs::path(a.out).replace_extension(".summary.json");
  write_text(summary, to_json(summarize(report)));
  for (const std::string& f : report.failures) std::cerr << "failed: " << f << "\n";
  return report.failures.empty() ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact weighted bandwidth minimization and RCM benchmarking"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate amorphous 2-D instances");
  gen_cmd->add_option("--n", gen.n, "Number of sites")->required()->check(CLI::Range(2, 1 << 20));
  gen_cmd->add_option("--seed", gen.seed, "Generator seed")->required();
  gen_cmd->add_option("--out", gen.out, "Output file (directory when --count > 1)")->required();
  gen_cmd->add_option("--count", gen.count, "Number of instances (seeds seed..seed+count-1)")
      ->check(CLI::PositiveNumber);
  gen_cmd->add_option("--L", gen.box_side, "Box side (default sqrt(n))");
  gen_cmd->add_option("--r-min", gen.r_min, "Minimum site separation (default 0.7)");

  std::string rcm_in, rcm_out;
  auto* rcm_cmd = app.add_subcommand("rcm", "Reverse Cuthill-McKee ordering of the bond graph");
  rcm_cmd->add_option("--instance", rcm_in)->required()->check(CLI::ExistingFile);
  rcm_cmd->add_option("--out", rcm_out)->required();

  SolveArgs solve;
  auto add_model_flags = [](CLI::App* cmd, SolveArgs& a) {
    cmd->add_option("--instance", a.instance)->required()->check(CLI::ExistingFile);
    cmd->add_option("--out", a.out)->required();
    cmd->add_flag("--no-lb", a.no_lb, "Disable the max-weight lower bound");
    cmd->add_flag("--no-sym", a.no_sym, "Disable reversal symmetry breaking");
    cmd->add_option("--anchor", a.anchor, "Anchor vertex of the symmetry rule");
  };
  auto* solve_cmd = app.add_subcommand("solve", "Solve an instance to optimality");
  add_model_flags(solve_cmd, solve);
  solve_cmd->add_option("--time-limit", solve.time_limit, "Seconds")->check(CLI::PositiveNumber);
  solve_cmd->add_option("--node-limit", solve.node_limit);
  solve_cmd->add_option("--threads", solve.threads)->check(CLI::PositiveNumber);
  solve_cmd->add_option("--method", solve.method, "bnb or brute (n <= 10)")
      ->check(CLI::IsMember({"bnb", "brute"}));

  SolveArgs lp;
  auto* lp_cmd = app.add_subcommand("export-lp", "Write the MILP in LP format");
  add_model_flags(lp_cmd, lp);

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate an ordering of an instance");
  eval_cmd->add_option("--instance", eval.instance)->required()->check(CLI::ExistingFile);
  eval_cmd->add_option("--ordering", eval.ordering, "Ordering JSON (identity if omitted)")
      ->check(CLI::ExistingFile);
  eval_cmd->add_option("--matrix-out", eval.matrix_out, "CSV of the permuted interaction matrix");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "RCM vs. exact benchmark suite");
  auto* sizes_opt = bench_cmd->add_option("--sizes", bench.sizes)->delimiter(',');
  bench_cmd->add_option("--per-size", bench.per_size)->check(CLI::PositiveNumber);
  bench_cmd->add_option("--seed", bench.seed);
  bench_cmd->add_flag("--ab-reinforcements", bench.ab, "Also solve without reinforcements");
  bench_cmd->add_flag("--paper-scale", bench.paper_scale, "Use n in {10,15,20}");
  bench_cmd->add_flag("--oracle", bench.oracle, "Cross-check optima by enumeration");
  bench_cmd->add_option("--time-limit", bench.time_limit, "Seconds per solve")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--jobs", bench.jobs, "Instances solved concurrently")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--threads", bench.threads, "Search threads per solve")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--out", bench.out, "CSV report")->required();
  bench_cmd->add_option("--summary", bench.summary_out, "Summary JSON (default <out>.summary.json)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen_cmd) run_gen(gen);
    if (*rcm_cmd) save(rcm_on_instance(load_instance(rcm_in)), rcm_out);
    if (*solve_cmd) run_solve(solve);
    if (*lp_cmd) run_export_lp(lp);
    if (*eval_cmd) run_eval(eval);
    if (*bench_cmd) return run_bench(bench, sizes_opt->count() > 0);
  } catch (const std::exception& e) {
    std::cerr << "bandopt: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
