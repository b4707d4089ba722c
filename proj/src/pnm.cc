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

#include "pnmgang/pnm.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <stdexcept>
#include <string>

#include "pnmgang/csv.h"

namespace pnmgang {
namespace {

MixtureStrategy support_mixture(const std::vector<MlpNet>& nets,
                                const MixedStrategy& weights) {
  std::vector<MlpNet> comps;
  std::vector<double> probs;
  for (std::size_t k = 0; k < nets.size(); ++k) {
    if (weights[k] > 0.0) {
      comps.push_back(nets[k]);
      probs.push_back(weights[k]);
    }
  }
  return {std::move(comps), MixedStrategy(std::move(probs))};
}

class NeuralBackend {
 public:
  using GStrategy = MlpNet;
  using CStrategy = MlpNet;
  using Memory = PnmState;

  NeuralBackend(const GangSpec& spec, const PnmConfig& cfg)
      : spec_(spec), cfg_(cfg) {
    spec_.validate();
    cfg_.validate();
  }

  MlpNet initial_g() {
    return init_random(spec_.gen_arch, derive_seed(cfg_.master_seed, "pnm/g_init"));
  }

  MlpNet initial_c(const MlpNet& g0) {
    RbbrConfig rc = cfg_.rbbr_c;
    rc.seed = derive_seed(cfg_.master_seed, "pnm/c_init");
    return rbbr_classifier(MixtureStrategy::single(g0), spec_, rc);
  }

  std::pair<MlpNet, MlpNet> best_responses(const PnmState& mem,
                                           std::uint64_t seed_g,
                                           std::uint64_t seed_c) {
    MixtureStrategy mu_g = generator_mixture(mem);
    MixtureStrategy mu_c = classifier_mixture(mem);
    RbbrConfig rg = cfg_.rbbr_g;
    rg.seed = seed_g;
    RbbrConfig rc = cfg_.rbbr_c;
    rc.seed = seed_c;
    if (cfg_.jobs > 1) {
      auto g = std::async(std::launch::async,
                          [&] { return rbbr_generator(mu_c, spec_, rg); });
      MlpNet c = rbbr_classifier(mu_g, spec_, rc);
      return {g.get(), std::move(c)};
    }
    MlpNet g = rbbr_generator(mu_c, spec_, rg);
    MlpNet c = rbbr_classifier(mu_g, spec_, rc);
    return {std::move(g), std::move(c)};
  }

  double test_g(const PnmState& mem, const MlpNet& g, std::uint64_t seed) {
    return payoff_ug_vs_mixture(g, classifier_mixture(mem), spec_,
                                cfg_.eval_samples, seed);
  }

  double test_c(const PnmState& mem, const MlpNet& c, std::uint64_t seed) {
    return payoff_uc(generator_mixture(mem), c, spec_, cfg_.eval_samples, seed);
  }

  // Same draw and arithmetic as payoff_ug(g_i, c_j, spec, n, matrix_seed).
  double entry(const PnmState& mem, std::size_t i, std::size_t j) {
    const std::uint64_t seed = matrix_seed(cfg_.master_seed);
    const std::size_t n = cfg_.eval_samples;
    while (mem.fake_cache.size() < mem.g_strats.size()) {
      const MlpNet& g = mem.g_strats[mem.fake_cache.size()];
      mem.fake_cache.push_back(sample_fake(MixtureStrategy::single(g), spec_, n,
                                           derive_seed(seed, "fake")));
    }
    if (mem.real_term_cache.size() < mem.c_strats.size()) {
      Matrix real = spec_.real_sampler(n, derive_seed(seed, "real"));
      while (mem.real_term_cache.size() < mem.c_strats.size()) {
        const MlpNet& c = mem.c_strats[mem.real_term_cache.size()];
        mem.real_term_cache.push_back(mean_measure(c, real, spec_.phi));
      }
    }
    double fake_term = mean_measure(mem.c_strats[j], mem.fake_cache[i], spec_.phi);
    double uc = mem.real_term_cache[j] - fake_term;
    if (!std::isfinite(uc)) throw NumericalError("non-finite payoff estimate");
    return -uc;
  }

  bool is_new_g(const PnmState&, const MlpNet&) { return true; }
  bool is_new_c(const PnmState&, const MlpNet&) { return true; }

 private:
  const GangSpec& spec_;
  const PnmConfig& cfg_;
};

class MatrixBackend {
 public:
  using GStrategy = std::size_t;
  using CStrategy = std::size_t;
  using Memory = PnmMemory<std::size_t, std::size_t>;

  explicit MatrixBackend(const PayoffMatrix& full) : full_(full) {}

  std::size_t initial_g() { return 0; }
  std::size_t initial_c(std::size_t g0) {
    return best_pure_response(full_, MixedStrategy::pure(full_.rows(), g0),
                              Player::kCol)
        .index;
  }

  MixedStrategy lifted_row(const Memory& mem) const {
    return lift(mem.g_strats, mem.ne.row_strategy, full_.rows());
  }
  MixedStrategy lifted_col(const Memory& mem) const {
    return lift(mem.c_strats, mem.ne.col_strategy, full_.cols());
  }

  std::pair<std::size_t, std::size_t> best_responses(const Memory& mem,
                                                     std::uint64_t,
                                                     std::uint64_t) {
    return {best_pure_response(full_, lifted_col(mem), Player::kRow).index,
            best_pure_response(full_, lifted_row(mem), Player::kCol).index};
  }

  double test_g(const Memory& mem, std::size_t g, std::uint64_t) {
    return pure_payoffs(full_, lifted_col(mem), Player::kRow)[g];
  }
  double test_c(const Memory& mem, std::size_t c, std::uint64_t) {
    return pure_payoffs(full_, lifted_row(mem), Player::kCol)[c];
  }

  double entry(const Memory& mem, std::size_t i, std::size_t j) {
    return full_(mem.g_strats[i], mem.c_strats[j]);
  }

  bool is_new_g(const Memory& mem, std::size_t g) {
    return std::find(mem.g_strats.begin(), mem.g_strats.end(), g) == mem.g_strats.end();
  }
  bool is_new_c(const Memory& mem, std::size_t c) {
    return std::find(mem.c_strats.begin(), mem.c_strats.end(), c) == mem.c_strats.end();
  }

 private:
  static MixedStrategy lift(const std::vector<std::size_t>& idx,
                            const MixedStrategy& sub, std::size_t n) {
    std::vector<double> p(n, 0.0);
    for (std::size_t k = 0; k < idx.size(); ++k) p[idx[k]] += sub[k];
    return MixedStrategy(std::move(p));
  }

  const PayoffMatrix& full_;
};

static_assert(PnmBackend<NeuralBackend>);
static_assert(PnmBackend<MatrixBackend>);

std::string indexed_name(char prefix, std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%c_%03zu.mlp", prefix, i);
  return buf;
}

}  // namespace

void PnmConfig::validate() const {
  if (iterations < 1) throw std::invalid_argument("pnm iterations must be >= 1");
  if (!(rb_ne_tolerance >= 0.0)) {
    throw std::invalid_argument("rb_ne_tolerance must be >= 0");
  }
  if (eval_samples == 0) throw std::invalid_argument("eval_samples must be >= 1");
  if (jobs < 1) throw std::invalid_argument("jobs must be >= 1");
  rbbr_g.validate();
  rbbr_c.validate();
}

MixtureStrategy generator_mixture(const PnmState& state) {
  return support_mixture(state.g_strats, state.ne.row_strategy);
}

MixtureStrategy classifier_mixture(const PnmState& state) {
  return support_mixture(state.c_strats, state.ne.col_strategy);
}

std::uint64_t matrix_seed(std::uint64_t master_seed) {
  return derive_seed(master_seed, "pnm/matrix");
}

PnmState pnm_init(const GangSpec& spec, const PnmConfig& cfg) {
  NeuralBackend backend(spec, cfg);
  return pnm_init_with(backend);
}

PnmState pnm_iterate(PnmState state, const GangSpec& spec,
                     const PnmConfig& cfg) {
  NeuralBackend backend(spec, cfg);
  pnm_step_with(backend, state, cfg.mode,
                IterationSeeds::for_iteration(cfg.master_seed, state.iteration + 1));
  return state;
}

PnmState pnm_run(const GangSpec& spec, const PnmConfig& cfg,
                 const PnmObserver& observer) {
  NeuralBackend backend(spec, cfg);
  PnmState state = pnm_init_with(backend);
  if (observer) observer(state);
  while (state.iteration < cfg.iterations && !state.terminated) {
    pnm_step_with(backend, state, cfg.mode,
                  IterationSeeds::for_iteration(cfg.master_seed, state.iteration + 1));
    if (observer) observer(state);
  }
  return state;
}

Certificate rb_ne_certificate(const PnmState& state, const GangSpec& spec,
                              const PnmConfig& cfg,
                              std::uint64_t fresh_attack_seed) {
  NeuralBackend backend(spec, cfg);
  return certificate_with(backend, state, fresh_attack_seed, cfg.rb_ne_tolerance);
}

void write_history_csv(std::ostream& out,
                       const std::vector<IterationRecord>& history) {
  out << "iteration,u_brs_g,u_brs_c,u_brs,accepted,value\n";
  for (const auto& r : history) {
    out << r.iteration << ',' << format_double(r.u_brs_g) << ','
        << format_double(r.u_brs_c) << ',' << format_double(r.u_brs) << ','
        << (r.accepted ? 1 : 0) << ',' << format_double(r.value) << '\n';
  }
}

void write_checkpoint(const std::filesystem::path& dir, const PnmState& state) {
  namespace fs = std::filesystem;
  fs::create_directories(dir / "strategies");
  for (std::size_t i = 0; i < state.g_strats.size(); ++i) {
    fs::path p = dir / "strategies" / indexed_name('g', i);
    if (!fs::exists(p)) save_net(p, state.g_strats[i]);
  }
  for (std::size_t j = 0; j < state.c_strats.size(); ++j) {
    fs::path p = dir / "strategies" / indexed_name('c', j);
    if (!fs::exists(p)) save_net(p, state.c_strats[j]);
  }
  {
    std::ofstream out(dir / "matrix.csv");
    write_matrix_csv(out, state.matrix);
  }
  {
    std::ofstream out(dir / "ne.csv");
    out << "player,index,weight\n";
    for (std::size_t i = 0; i < state.ne.row_strategy.size(); ++i) {
      out << "g," << i << ',' << format_double(state.ne.row_strategy[i]) << '\n';
    }
    for (std::size_t j = 0; j < state.ne.col_strategy.size(); ++j) {
      out << "c," << j << ',' << format_double(state.ne.col_strategy[j]) << '\n';
    }
  }
  {
    std::ofstream out(dir / "history.csv");
    write_history_csv(out, state.history);
  }
  {
    std::ofstream out(dir / "timing.csv");
    out << "iteration,wall_seconds\n";
    for (const auto& r : state.history) {
      out << r.iteration << ',' << format_double(r.wall_seconds) << '\n';
    }
  }
}

MixtureStrategy LoadedSolution::generator_mixture() const {
  return support_mixture(g_strats, g_weights);
}

MixtureStrategy LoadedSolution::classifier_mixture() const {
  return support_mixture(c_strats, c_weights);
}

LoadedSolution load_solution(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  std::vector<MlpNet> gs;
  std::vector<MlpNet> cs;
  for (std::size_t i = 0;; ++i) {
    fs::path p = dir / "strategies" / indexed_name('g', i);
    if (!fs::exists(p)) break;
    gs.push_back(load_net(p));
  }
  for (std::size_t j = 0;; ++j) {
    fs::path p = dir / "strategies" / indexed_name('c', j);
    if (!fs::exists(p)) break;
    cs.push_back(load_net(p));
  }
  if (gs.empty() || cs.empty()) {
    throw std::runtime_error("no strategies found in " + dir.string());
  }
  std::ifstream in(dir / "ne.csv");
  if (!in) throw std::runtime_error("missing ne.csv in " + dir.string());
  std::vector<double> gw(gs.size(), -1.0);
  std::vector<double> cw(cs.size(), -1.0);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto f = split_csv_line(line);
    if (f.size() != 3 || (f[0] != "g" && f[0] != "c")) {
      throw std::runtime_error("corrupt ne.csv line: " + line);
    }
    std::size_t idx = 0;
    try {
      idx = std::stoul(f[1]);
    } catch (const std::exception&) {
      throw std::runtime_error("corrupt ne.csv line: " + line);
    }
    auto& w = f[0] == "g" ? gw : cw;
    if (idx >= w.size()) throw std::runtime_error("ne.csv index out of range");
    try {
      w[idx] = parse_double(f[2]);
    } catch (const std::invalid_argument&) {
      throw std::runtime_error("corrupt ne.csv weight: " + line);
    }
  }
  for (double v : gw) {
    if (v < 0.0) throw std::runtime_error("ne.csv is missing generator weights");
  }
  for (double v : cw) {
    if (v < 0.0) throw std::runtime_error("ne.csv is missing classifier weights");
  }
  try {
    return {std::move(gs), std::move(cs), MixedStrategy(gw), MixedStrategy(cw)};
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("corrupt ne.csv: ") + e.what());
  }
}

MatrixPnmResult pnm_on_matrix(const PayoffMatrix& full,
                              const MatrixPnmConfig& cfg) {
  MatrixBackend backend(full);
  auto mem = pnm_init_with(backend);
  while (!mem.terminated && mem.iteration < cfg.max_iterations) {
    pnm_step_with(backend, mem, cfg.mode, IterationSeeds{0, 0, 0});
  }
  MatrixPnmResult out{
      GameSolution{backend.lifted_row(mem), backend.lifted_col(mem), mem.ne.value},
      mem.g_strats, mem.c_strats, mem.history, mem.terminated};
  return out;
}

Certificate matrix_certificate(const PayoffMatrix& full,
                               const StrategyProfile& profile,
                               double tolerance) {
  double u = best_pure_response(full, profile.col, Player::kRow).value +
             best_pure_response(full, profile.row, Player::kCol).value;
  return {u, u <= tolerance};
}

}  // namespace pnmgang
