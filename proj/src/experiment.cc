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

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <ostream>

#include "pnmgang/csv.h"
#include "pnmgang/random.h"

namespace pnmgang {
namespace {

namespace fs = std::filesystem;

std::ofstream open_out(const fs::path& p) {
  std::ofstream out(p);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  return out;
}

std::vector<int> repeat(int width, int layers) {
  return std::vector<int>(static_cast<std::size_t>(layers), width);
}

}  // namespace

GaussianMixtureTask make_experiment_task(const ExperimentConfig& cfg) {
  return make_task(cfg.task_name, cfg.task_seed);
}

GangSpec make_gang_spec(const GaussianMixtureTask& task,
                        const ExperimentConfig& cfg) {
  GangSpec spec;
  spec.real_sampler = [task](std::size_t n, std::uint64_t seed) {
    return sample_real(task, n, seed);
  };
  spec.latent_sampler = standard_normal_sampler(cfg.latent_dim);
  spec.data_dim = 2;
  spec.latent_dim = cfg.latent_dim;
  spec.gen_arch = make_mlp(cfg.latent_dim, cfg.gen_hidden, 2, cfg.hidden_activation,
                           Activation::kLinear);
  spec.clf_arch = make_mlp(2, cfg.clf_hidden, 1, cfg.hidden_activation,
                           Activation::kSigmoid);
  spec.phi = cfg.phi;
  spec.validate();
  return spec;
}

AttackConfig make_attack_config(const ExperimentConfig& cfg) {
  AttackConfig atk;
  atk.attacker_gen_arch = make_mlp(cfg.latent_dim, cfg.attack_gen_hidden, 2,
                                   cfg.hidden_activation, Activation::kLinear);
  atk.attacker_clf_arch = make_mlp(2, cfg.attack_clf_hidden, 1,
                                   cfg.hidden_activation, Activation::kSigmoid);
  atk.rbbr = cfg.attack_rbbr;
  atk.n_restarts = cfg.attack_restarts;
  atk.eval_samples = cfg.pnm.eval_samples;
  atk.validate();
  return atk;
}

SolutionEval evaluate_solution(const MixtureStrategy& mu_g,
                               const MixtureStrategy& mu_c,
                               const GaussianMixtureTask& task,
                               const GangSpec& spec,
                               const ExperimentConfig& cfg, std::uint64_t seed) {
  Matrix fake = sample_fake(mu_g, spec, cfg.pnm.eval_samples,
                            derive_seed(seed, "eval/coverage"));
  SolutionEval ev{
      mode_coverage(task, fake, cfg.coverage_radius_mult, cfg.coverage_threshold),
      indifference_stat(mu_c, task, cfg.indifference_samples,
                        derive_seed(seed, "eval/indifference")),
      std::nullopt};
  if (cfg.attack_enabled) {
    ev.exploitability = exploitability(mu_g, mu_c, spec, make_attack_config(cfg),
                                       derive_seed(seed, "eval/attack"));
  }
  return ev;
}

GanBaseline train_gan_baseline(const GangSpec& spec,
                               const GanBaselineConfig& cfg) {
  GangSpec s = spec;
  s.gen_arch = cfg.gen_arch;
  s.clf_arch = cfg.clf_arch;
  s.validate();
  RbbrConfig rg = cfg.rbbr_g;
  rg.seed = derive_seed(cfg.seed, "baseline/g");
  RbbrConfig rc = cfg.rbbr_c;
  rc.seed = derive_seed(cfg.seed, "baseline/c");
  rg.validate();
  rc.validate();

  GanBaseline b{init_random(s.gen_arch, derive_seed(cfg.seed, "baseline/g_init")),
                init_random(s.clf_arch, derive_seed(cfg.seed, "baseline/c_init"))};
  Optimizer opt_g(rg.optimizer, b.g.params().size());
  Optimizer opt_c(rc.optimizer, b.c.params().size());
  const int total = std::max(cfg.g_steps, cfg.c_steps);
  for (int t = 0; t < total; ++t) {
    if (t < cfg.c_steps) {
      classifier_update(b.c, opt_c, MixtureStrategy::single(b.g), s, rc, t);
    }
    if (t < cfg.g_steps) {
      generator_update(b.g, opt_g, MixtureStrategy::single(b.c), s, rg, t);
    }
  }
  check_finite(b.g, "gan baseline generator");
  check_finite(b.c, "gan baseline classifier");
  return b;
}

int width_for_param_budget(int latent_dim, int data_dim, int hidden_layers,
                           Activation hidden, std::size_t budget) {
  int best = 1;
  std::size_t best_gap = static_cast<std::size_t>(-1);
  for (int w = 1; w <= 4096; ++w) {
    std::size_t n =
        param_count(make_mlp(latent_dim, repeat(w, hidden_layers), data_dim, hidden,
                             Activation::kLinear)) +
        param_count(make_mlp(data_dim, repeat(w, hidden_layers), 1, hidden,
                             Activation::kSigmoid));
    std::size_t gap = n > budget ? n - budget : budget - n;
    if (gap < best_gap) {
      best = w;
      best_gap = gap;
    }
    if (n > budget) break;
  }
  return best;
}

GanBaselineConfig baseline_config_for(const ExperimentConfig& cfg,
                                      const GangSpec& spec,
                                      std::size_t param_budget,
                                      int pnm_iterations) {
  const int layers = static_cast<int>(
      std::max(cfg.gen_hidden.size(), cfg.clf_hidden.size()));
  const int w = width_for_param_budget(spec.latent_dim, spec.data_dim, layers,
                                       cfg.hidden_activation, param_budget);
  GanBaselineConfig b;
  b.gen_arch = make_mlp(spec.latent_dim, repeat(w, layers), spec.data_dim,
                        cfg.hidden_activation, Activation::kLinear);
  b.clf_arch = make_mlp(spec.data_dim, repeat(w, layers), 1, cfg.hidden_activation,
                        Activation::kSigmoid);
  b.g_steps = pnm_iterations * cfg.pnm.rbbr_g.steps;
  b.c_steps = (pnm_iterations + 1) * cfg.pnm.rbbr_c.steps;
  b.rbbr_g = cfg.pnm.rbbr_g;
  b.rbbr_c = cfg.pnm.rbbr_c;
  b.rbbr_c.uniform_fake = false;
  b.seed = derive_seed(cfg.master_seed, "baseline");
  return b;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg,
                                const fs::path& out_dir, std::ostream* log,
                                const PnmObserver& observer) {
  cfg.validate();
  GaussianMixtureTask task = make_experiment_task(cfg);
  GangSpec spec = make_gang_spec(task, cfg);
  PnmConfig pcfg = cfg.pnm;
  pcfg.master_seed = cfg.master_seed;
  pcfg.jobs = cfg.jobs;

  const bool write = !out_dir.empty();
  if (write) {
    fs::create_directories(out_dir);
    fs::remove_all(out_dir / "strategies");
    open_out(out_dir / "config.resolved.ini") << to_ini(cfg);
    auto t = open_out(out_dir / "task.csv");
    write_task_csv(t, task);
  }

  PnmState state = pnm_run(spec, pcfg, [&](const PnmState& s) {
    if (write) write_checkpoint(out_dir, s);
    if (observer) observer(s);
    if (log != nullptr && !s.history.empty()) {
      const IterationRecord& r = s.history.back();
      *log << "iteration " << r.iteration << " u_brs=" << format_double(r.u_brs)
           << (r.accepted ? " accepted" : " rejected") << " |G|=" << r.g_count
           << " |C|=" << r.c_count << " value=" << format_double(r.value) << " ("
           << r.wall_seconds << " s)\n"
           << std::flush;
    }
  });

  MixtureStrategy mu_g = generator_mixture(state);
  MixtureStrategy mu_c = classifier_mixture(state);
  const std::uint64_t eval_seed = derive_seed(cfg.master_seed, "eval");
  SolutionEval ev = evaluate_solution(mu_g, mu_c, task, spec, cfg, eval_seed);

  std::optional<Certificate> cert;
  if (pcfg.mode == PnmMode::kDeterministicStop && state.terminated) {
    cert = rb_ne_certificate(state, spec, pcfg,
                             derive_seed(cfg.master_seed, "certificate"));
  }

  ExperimentResult result{std::move(task), std::move(state), std::move(ev), cert,
                          mu_g.total_params() + mu_c.total_params()};

  if (write) {
    {
      auto out = open_out(out_dir / "convergence.csv");
      out << "iteration,u_brs_g,u_brs_c,u_brs,accepted,value,g_count,c_count\n";
      for (const auto& r : result.state.history) {
        out << r.iteration << ',' << format_double(r.u_brs_g) << ','
            << format_double(r.u_brs_c) << ',' << format_double(r.u_brs) << ','
            << (r.accepted ? 1 : 0) << ',' << format_double(r.value) << ','
            << r.g_count << ',' << r.c_count << '\n';
      }
    }
    {
      auto out = open_out(out_dir / "metrics.csv");
      write_metrics_csv(out, result);
    }
    SurfaceData surface;
    surface.grid = default_grid(result.task, cfg.surface_resolution, cfg.surface_inflate);
    surface.values = classifier_response_surface(mu_c, surface.grid);
    ScatterData scatter{
        sample_real(result.task, cfg.scatter_samples, derive_seed(eval_seed, "scatter/real")),
        sample_fake(mu_g, spec, cfg.scatter_samples, derive_seed(eval_seed, "scatter/fake"))};
    {
      auto out = open_out(out_dir / "surface.csv");
      write_surface_csv(out, surface.grid, surface.values);
    }
    {
      auto out = open_out(out_dir / "scatter.csv");
      write_scatter_csv(out, scatter.real, scatter.fake);
    }
    open_out(out_dir / "plot.svg")
        << render_svg(surface, scatter, cfg.task_name + " PNM mixture");
    open_out(out_dir / "manifest.txt")
        << "pnmgang output layout " << kOutputLayoutVersion << '\n'
        << "config.resolved.ini\ntask.csv\nstrategies/\nmatrix.csv\nne.csv\n"
           "history.csv\ntiming.csv\nconvergence.csv\nmetrics.csv\nsurface.csv\n"
           "scatter.csv\nplot.svg\n";
  }
  return result;
}

void write_metrics_csv(std::ostream& out, const ExperimentResult& r) {
  auto row = [&](const std::string& k, const std::string& v) {
    out << k << ',' << v << '\n';
  };
  const auto& s = r.state;
  std::size_t accepted = 0;
  for (const auto& h : s.history) accepted += h.accepted ? 1 : 0;
  out << "metric,value\n";
  row("iterations", std::to_string(s.iteration));
  row("accepted_iterations", std::to_string(accepted));
  row("terminated", s.terminated ? "1" : "0");
  row("g_strategies", std::to_string(s.g_strats.size()));
  row("c_strategies", std::to_string(s.c_strats.size()));
  row("value", format_double(s.ne.value));
  row("support_params", std::to_string(r.support_params));
  row("mode_count", std::to_string(r.task.modes.size()));
  row("covered_modes", std::to_string(r.eval.coverage.covered_count));
  row("indifference_mean", format_double(r.eval.indifference.mean_output));
  row("indifference_fraction", format_double(r.eval.indifference.fraction_in_band));
  if (r.eval.exploitability) {
    const auto& e = *r.eval.exploitability;
    row("expl", format_double(e.expl));
    row("expl_g_term", format_double(e.g_term));
    row("expl_c_term", format_double(e.c_term));
    row("attacker_gen_params", std::to_string(e.attacker_gen_params));
    row("attacker_clf_params", std::to_string(e.attacker_clf_params));
  }
  if (r.certificate) {
    row("certificate_u_brs", format_double(r.certificate->u_brs_fresh));
    row("certified", r.certificate->certified ? "1" : "0");
  }
}

}  // namespace pnmgang
