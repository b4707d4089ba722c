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

#ifndef PNMGANG_EXPERIMENT_H_
#define PNMGANG_EXPERIMENT_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "pnmgang/config.h"
#include "pnmgang/eval.h"
#include "pnmgang/gang.h"
#include "pnmgang/pnm.h"
#include "pnmgang/tasks.h"

namespace pnmgang {

// Bumped whenever the output directory layout changes.
inline constexpr int kOutputLayoutVersion = 1;

GaussianMixtureTask make_experiment_task(const ExperimentConfig& cfg);
GangSpec make_gang_spec(const GaussianMixtureTask& task,
                        const ExperimentConfig& cfg);
AttackConfig make_attack_config(const ExperimentConfig& cfg);

struct SolutionEval {
  Coverage coverage;
  IndifferenceStat indifference;
  std::optional<Exploitability> exploitability;
};

// Coverage of fake samples, classifier indifference on real samples and
// (when enabled) exploitability, each on its own seed derived from `seed`.
SolutionEval evaluate_solution(const MixtureStrategy& mu_g,
                               const MixtureStrategy& mu_c,
                               const GaussianMixtureTask& task,
                               const GangSpec& spec,
                               const ExperimentConfig& cfg, std::uint64_t seed);

// Single generator/classifier pair trained by alternating one classifier
// update with one generator update on the same zero-sum objectives used by
// the best responses. The player with the smaller budget stops early.
struct GanBaselineConfig {
  Architecture gen_arch;
  Architecture clf_arch;
  int g_steps = 0;
  int c_steps = 0;
  RbbrConfig rbbr_g;  // batch size and optimizer
  RbbrConfig rbbr_c;
  std::uint64_t seed = 0;
};

struct GanBaseline {
  MlpNet g;
  MlpNet c;
};

GanBaseline train_gan_baseline(const GangSpec& spec,
                               const GanBaselineConfig& cfg);

// Hidden width (same for every hidden layer) whose generator plus
// classifier parameter count is closest to `budget`.
int width_for_param_budget(int latent_dim, int data_dim, int hidden_layers,
                           Activation hidden, std::size_t budget);

// Baseline matched to a finished PNM run: same total number of updates per
// player, same batch sizes and optimizers, and a width chosen so that its
// parameter count is close to `param_budget`.
GanBaselineConfig baseline_config_for(const ExperimentConfig& cfg,
                                      const GangSpec& spec,
                                      std::size_t param_budget,
                                      int pnm_iterations);

struct ExperimentResult {
  GaussianMixtureTask task;
  PnmState state;
  SolutionEval eval;
  std::optional<Certificate> certificate;  // deterministic-stop runs
  std::size_t support_params = 0;          // nets with positive weight
};

// Runs PNM and the final evaluation. With a non-empty `out_dir`, writes the
// checkpoint after every iteration and the final artifacts:
//   manifest.txt config.resolved.ini task.csv
//   strategies/ matrix.csv ne.csv history.csv timing.csv convergence.csv
//   metrics.csv surface.csv scatter.csv plot.svg
// `observer` sees the state after initialization and after every iteration.
ExperimentResult run_experiment(const ExperimentConfig& cfg,
                                const std::filesystem::path& out_dir = {},
                                std::ostream* log = nullptr,
                                const PnmObserver& observer = {});

// metric,value rows.
void write_metrics_csv(std::ostream& out, const ExperimentResult& r);

}  // namespace pnmgang

#endif  // PNMGANG_EXPERIMENT_H_
