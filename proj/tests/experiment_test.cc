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

#include "pnmgang/experiment.h"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "tiny_config.h"

namespace pnmgang {
namespace {

namespace fs = std::filesystem;

ExperimentConfig tiny() {
  std::istringstream in(kTinyConfig);
  return config_from_ini(parse_ini(in));
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST_CASE("end-to-end run writes every artifact") {
  fs::path dir = fs::temp_directory_path() / "pnmgang_experiment_test";
  fs::remove_all(dir);
  ExperimentConfig cfg = tiny();
  std::ostringstream log;
  ExperimentResult r = run_experiment(cfg, dir, &log);
  for (const char* f : {"manifest.txt", "config.resolved.ini", "task.csv", "matrix.csv", "ne.csv",
                        "history.csv", "timing.csv", "convergence.csv", "metrics.csv",
                        "surface.csv", "scatter.csv", "plot.svg"}) {
    CHECK_MESSAGE(fs::exists(dir / f), f);
  }
  CHECK(fs::is_directory(dir / "strategies"));
  CHECK(r.state.history.size() == 2);
  CHECK(r.eval.exploitability.has_value());
  CHECK(!r.certificate.has_value());
  CHECK(r.support_params > 0);
  CHECK(r.eval.coverage.fractions.size() == 9);
  CHECK(!log.str().empty());

  std::istringstream resolved(slurp(dir / "config.resolved.ini"));
  CHECK(to_ini(config_from_ini(parse_ini(resolved))) == to_ini(cfg));
  CHECK(slurp(dir / "metrics.csv").rfind("metric,value\n", 0) == 0);
  CHECK(slurp(dir / "plot.svg").find("grid9 PNM mixture") != std::string::npos);

  // Same config, same numbers.
  ExperimentResult again = run_experiment(cfg);
  CHECK(again.state.matrix == r.state.matrix);
  std::ostringstream m1, m2;
  write_metrics_csv(m1, r);
  write_metrics_csv(m2, again);
  CHECK(m1.str() == m2.str());
  fs::remove_all(dir);
}

TEST_CASE("deterministic stop runs carry a certificate when they terminate") {
  ExperimentConfig cfg = tiny();
  cfg.pnm.mode = PnmMode::kDeterministicStop;
  cfg.pnm.iterations = 3;
  cfg.attack_enabled = false;
  ExperimentResult r = run_experiment(cfg);
  CHECK(!r.eval.exploitability.has_value());
  CHECK(r.certificate.has_value() == r.state.terminated);
}

TEST_CASE("baseline sizing and training") {
  ExperimentConfig cfg = tiny();
  GaussianMixtureTask task = make_experiment_task(cfg);
  GangSpec spec = make_gang_spec(task, cfg);
  const std::size_t budget = 5000;
  const int w = width_for_param_budget(8, 2, 2, Activation::kRelu, budget);
  auto total = [](int width) {
    return param_count(default_generator_arch(8, 2, width)) +
           param_count(default_classifier_arch(2, width));
  };
  auto gap = [&](int width) {
    return std::abs(static_cast<double>(total(width)) - static_cast<double>(budget));
  };
  CHECK(gap(w) <= gap(w - 1));
  CHECK(gap(w) <= gap(w + 1));

  GanBaselineConfig b = baseline_config_for(cfg, spec, budget, 2);
  CHECK(b.g_steps == 2 * cfg.pnm.rbbr_g.steps);
  CHECK(b.c_steps == 3 * cfg.pnm.rbbr_c.steps);
  CHECK(!b.rbbr_c.uniform_fake);
  GanBaseline g1 = train_gan_baseline(spec, b);
  GanBaseline g2 = train_gan_baseline(spec, b);
  CHECK(g1.g == g2.g);
  CHECK(g1.c == g2.c);
}

}  // namespace
}  // namespace pnmgang
