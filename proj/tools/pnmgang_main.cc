// Copyright 2026 The pnmgang Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// pnmgang: run PNM experiments, solve matrix games, attack saved solutions
// and re-render plots.
//
// Exit codes: 0 success, 2 bad input (config, CSV, checkpoint), 3 numerical
// failure, 1 anything else.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "pnmgang/config.h"
#include "pnmgang/csv.h"
#include "pnmgang/eval.h"
#include "pnmgang/experiment.h"
#include "pnmgang/game.h"
#include "pnmgang/matrix_solver.h"
#include "pnmgang/pnm.h"
#include "pnmgang/random.h"

namespace {

namespace fs = std::filesystem;
using namespace pnmgang;

constexpr int kExitOk = 0;
constexpr int kExitOther = 1;
constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunArgs {
  std::string config;
  std::string preset;
  std::optional<int> jobs;
  std::string output;
  bool quiet = false;
};

int cmd_run(const RunArgs& a) {
  ExperimentConfig cfg = load_config(a.config);
  if (a.preset == "slow-g") {
    apply_slow_g_preset(cfg);
  } else if (!a.preset.empty()) {
    throw ConfigError("--preset", "unknown preset '" + a.preset + "'");
  }
  if (a.jobs) {
    cfg.jobs = *a.jobs;
    cfg.pnm.jobs = *a.jobs;
  }
  if (!a.output.empty()) cfg.output_dir = a.output;
  cfg.validate();

  ExperimentResult r = run_experiment(cfg, cfg.output_dir, a.quiet ? nullptr : &std::cerr);
  write_metrics_csv(std::cout, r);
  return kExitOk;
}

int cmd_solve_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  PayoffMatrix m = [&] {
    try {
      return read_matrix_csv(in);
    } catch (const std::exception& e) {
      throw InputError(path + ": " + e.what());
    }
  }();
  GameSolution s = solve_zero_sum(m);
  std::cout << "value," << format_double(s.value) << '\n';
  std::cout << "row";
  for (double p : s.row_strategy.probs()) std::cout << ',' << format_double(p);
  std::cout << "\ncol";
  for (double p : s.col_strategy.probs()) std::cout << ',' << format_double(p);
  std::cout << '\n';
  return kExitOk;
}

struct ExploitArgs {
  std::string dir;
  std::optional<int> restarts;
  std::optional<int> steps;
  std::optional<std::uint64_t> seed;
};

void check_arch(const std::vector<MlpNet>& nets, const Architecture& expected,
                const char* who) {
  for (const auto& n : nets) {
    if (n.arch().input_dim() != expected.input_dim() ||
        n.arch().output_dim() != expected.output_dim()) {
      throw InputError(std::string(who) + " network has the wrong input/output size");
    }
  }
}

int cmd_exploit(const ExploitArgs& a) {
  const fs::path dir(a.dir);
  const fs::path ini = dir / "config.resolved.ini";
  if (!fs::exists(ini)) throw InputError("missing " + ini.string());
  ExperimentConfig cfg = load_config(ini.string());
  if (a.restarts) cfg.attack_restarts = *a.restarts;
  if (a.steps) cfg.attack_rbbr.steps = *a.steps;
  cfg.validate();

  LoadedSolution sol = [&] {
    try {
      return load_solution(dir);
    } catch (const std::exception& e) {
      throw InputError(e.what());
    }
  }();
  GaussianMixtureTask task = make_experiment_task(cfg);
  GangSpec spec = make_gang_spec(task, cfg);
  check_arch(sol.g_strats, spec.gen_arch, "generator");
  check_arch(sol.c_strats, spec.clf_arch, "classifier");

  const std::uint64_t seed =
      a.seed ? *a.seed : derive_seed(derive_seed(cfg.master_seed, "eval"), "eval/attack");
  Exploitability e = exploitability(sol.generator_mixture(), sol.classifier_mixture(),
                                    spec, make_attack_config(cfg), seed);
  std::cout << "expl,g_term,c_term,attacker_gen_params,attacker_clf_params\n"
            << format_double(e.expl) << ',' << format_double(e.g_term) << ','
            << format_double(e.c_term) << ',' << e.attacker_gen_params << ','
            << e.attacker_clf_params << '\n';
  return kExitOk;
}

struct PlotArgs {
  std::string dir;
  std::string output;
  std::string title;
};

int cmd_plot(const PlotArgs& a) {
  const fs::path dir(a.dir);
  std::ifstream sin(dir / "surface.csv");
  std::ifstream pin(dir / "scatter.csv");
  if (!sin || !pin) throw InputError("missing surface.csv or scatter.csv in " + a.dir);
  SurfaceData surface;
  ScatterData scatter;
  try {
    surface = read_surface_csv(sin);
    scatter = read_scatter_csv(pin);
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
  const fs::path out = a.output.empty() ? dir / "plot.svg" : fs::path(a.output);
  std::ofstream o(out);
  if (!o) throw std::runtime_error("cannot write " + out.string());
  o << render_svg(surface, scatter, a.title);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parallel Nash Memory for generative adversarial network games"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Run a PNM experiment from a config file");
  run->add_option("--config", run_args.config, "Config file")->required();
  run->add_option("--preset", run_args.preset, "Preset overrides (slow-g)");
  run->add_option("--jobs", run_args.jobs, "Concurrent trainings");
  run->add_option("--output", run_args.output, "Output directory (overrides the config)");
  run->add_flag("--quiet", run_args.quiet, "No per-iteration log");

  std::string matrix_path;
  auto* solve = app.add_subcommand("solve-matrix", "Solve a zero-sum matrix game given as CSV");
  solve->add_option("csv", matrix_path, "Row-player payoff matrix")->required();

  ExploitArgs ex_args;
  auto* exploit = app.add_subcommand("exploit", "Attack a saved solution");
  exploit->add_option("solution_dir", ex_args.dir, "Output directory of a run")->required();
  exploit->add_option("--restarts", ex_args.restarts, "Attack restarts");
  exploit->add_option("--steps", ex_args.steps, "Attacker training steps");
  exploit->add_option("--seed", ex_args.seed, "Attack seed");

  PlotArgs plot_args;
  auto* plot = app.add_subcommand("plot", "Re-render plot.svg from surface.csv and scatter.csv");
  plot->add_option("dir", plot_args.dir, "Directory holding the CSV files")->required();
  plot->add_option("--output", plot_args.output, "SVG path (default dir/plot.svg)");
  plot->add_option("--title", plot_args.title, "Plot title");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*run) return cmd_run(run_args);
    if (*solve) return cmd_solve_matrix(matrix_path);
    if (*exploit) return cmd_exploit(ex_args);
    if (*plot) return cmd_plot(plot_args);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitInput;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitOther;
  }
  return kExitOther;
}
