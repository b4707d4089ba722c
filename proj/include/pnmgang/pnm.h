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

#ifndef PNMGANG_PNM_H_
#define PNMGANG_PNM_H_

// Parallel Nash Memory: grow a subgame with best responses of both players,
// keep every strategy ever added, and re-solve the subgame after each
// accepted test.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <utility>
#include <vector>

#include "pnmgang/game.h"
#include "pnmgang/gang.h"
#include "pnmgang/matrix_solver.h"
#include "pnmgang/random.h"

namespace pnmgang {

enum class PnmMode { kDeterministicStop, kFixedIterations };

struct IterationRecord {
  int iteration = 0;
  double u_brs_g = 0.0;  // u_G(new generator, mu_C)
  double u_brs_c = 0.0;  // u_C(mu_G, new classifier)
  double u_brs = 0.0;
  bool accepted = false;
  double value = 0.0;  // subgame value after the iteration
  std::size_t g_count = 0;
  std::size_t c_count = 0;
  double wall_seconds = 0.0;
};

// Strategy lists, the payoff matrix over them (row = generator, entry = u_G)
// and its current solution.
template <typename GStrategy, typename CStrategy>
struct PnmMemory {
  PnmMemory(GStrategy g0, CStrategy c0)
      : matrix(1, 1, {0.0}),
        ne{MixedStrategy::pure(1, 0), MixedStrategy::pure(1, 0), 0.0} {
    g_strats.push_back(std::move(g0));
    c_strats.push_back(std::move(c0));
  }

  std::vector<GStrategy> g_strats;
  std::vector<CStrategy> c_strats;
  PayoffMatrix matrix;
  GameSolution ne;
  std::vector<IterationRecord> history;
  int iteration = 0;
  bool terminated = false;
};

struct PnmConfig {
  PnmMode mode = PnmMode::kFixedIterations;
  // Iteration count in fixed mode; iteration cap in deterministic-stop mode.
  int iterations = 30;
  // Per-iteration seeds are derived from master_seed; the seed fields of
  // these two configs are ignored.
  RbbrConfig rbbr_g;
  RbbrConfig rbbr_c;
  std::size_t eval_samples = 10000;
  std::uint64_t master_seed = 0;
  double rb_ne_tolerance = 0.05;
  // Upper bound on concurrently running trainings / evaluations.
  int jobs = 1;

  void validate() const;
};

// A backend supplies the initial strategies, both best-response functions,
// the test payoffs against the current mixtures and the payoff-matrix
// entries. `is_new_*` lets exact oracles skip strategies already held.
template <typename B>
concept PnmBackend = requires(B& b, const typename B::Memory& m,
                              const typename B::GStrategy& g,
                              const typename B::CStrategy& c, std::uint64_t s,
                              std::size_t i) {
  { b.initial_g() } -> std::same_as<typename B::GStrategy>;
  { b.initial_c(g) } -> std::same_as<typename B::CStrategy>;
  { b.best_responses(m, s, s) } -> std::same_as<
      std::pair<typename B::GStrategy, typename B::CStrategy>>;
  { b.test_g(m, g, s) } -> std::convertible_to<double>;
  { b.test_c(m, c, s) } -> std::convertible_to<double>;
  { b.entry(m, i, i) } -> std::convertible_to<double>;
  { b.is_new_g(m, g) } -> std::convertible_to<bool>;
  { b.is_new_c(m, c) } -> std::convertible_to<bool>;
};

struct IterationSeeds {
  std::uint64_t rbbr_g;
  std::uint64_t rbbr_c;
  std::uint64_t test;

  static IterationSeeds for_iteration(std::uint64_t master, int iteration) {
    auto it = static_cast<std::uint64_t>(iteration);
    return {derive_seed(master, "pnm/rbbr_g", {it}),
            derive_seed(master, "pnm/rbbr_c", {it}),
            derive_seed(master, "pnm/test", {it})};
  }
  static IterationSeeds for_certificate(std::uint64_t fresh) {
    return {derive_seed(fresh, "certificate/rbbr_g"),
            derive_seed(fresh, "certificate/rbbr_c"),
            derive_seed(fresh, "certificate/test")};
  }
};

template <PnmBackend B>
typename B::Memory pnm_init_with(B& backend) {
  auto g0 = backend.initial_g();
  auto c0 = backend.initial_c(g0);
  typename B::Memory mem(std::move(g0), std::move(c0));
  double e = backend.entry(mem, 0, 0);
  mem.matrix = PayoffMatrix(1, 1, {e});
  mem.ne.value = e;
  return mem;
}

// One test-and-augment round. Accepted iff u_brs > 0; then both candidates
// join the memory (a new row and a new column, including their mutual
// entry) and the subgame is re-solved. A rejected round ends the run in
// deterministic-stop mode and is discarded otherwise.
template <PnmBackend B>
void pnm_step_with(B& backend, typename B::Memory& mem, PnmMode mode,
                   const IterationSeeds& seeds) {
  if (mem.terminated) return;
  const auto start = std::chrono::steady_clock::now();
  IterationRecord rec;
  rec.iteration = mem.iteration + 1;

  auto [g_new, c_new] = backend.best_responses(mem, seeds.rbbr_g, seeds.rbbr_c);
  rec.u_brs_g = backend.test_g(mem, g_new, seeds.test);
  rec.u_brs_c = backend.test_c(mem, c_new, seeds.test);
  rec.u_brs = rec.u_brs_g + rec.u_brs_c;

  bool add_g = false;
  bool add_c = false;
  if (rec.u_brs > 0.0) {
    add_g = backend.is_new_g(mem, g_new);
    add_c = backend.is_new_c(mem, c_new);
  }
  rec.accepted = add_g || add_c;

  if (rec.accepted) {
    const std::size_t rows = mem.g_strats.size();
    const std::size_t cols = mem.c_strats.size();
    if (add_g) mem.g_strats.push_back(std::move(g_new));
    if (add_c) mem.c_strats.push_back(std::move(c_new));
    std::vector<double> new_col;
    if (add_c) {
      for (std::size_t i = 0; i < rows; ++i) new_col.push_back(backend.entry(mem, i, cols));
    }
    std::vector<double> new_row;
    if (add_g) {
      for (std::size_t j = 0; j < mem.c_strats.size(); ++j) {
        new_row.push_back(backend.entry(mem, rows, j));
      }
    }
    if (add_g && add_c) {
      mem.matrix = mem.matrix.augmented(new_row, new_col);
    } else if (add_g) {
      mem.matrix = mem.matrix.with_row(new_row);
    } else {
      mem.matrix = mem.matrix.with_col(new_col);
    }
    mem.ne = solve_zero_sum(mem.matrix);
  } else if (mode == PnmMode::kDeterministicStop) {
    mem.terminated = true;
  }

  mem.iteration = rec.iteration;
  rec.value = mem.ne.value;
  rec.g_count = mem.g_strats.size();
  rec.c_count = mem.c_strats.size();
  rec.wall_seconds = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - start)
                         .count();
  mem.history.push_back(rec);
}

struct Certificate {
  double u_brs_fresh;
  bool certified;
};

// One more independent pair of best responses against the final mixtures;
// certified iff their combined payoff does not exceed `tolerance`.
template <PnmBackend B>
Certificate certificate_with(B& backend, const typename B::Memory& mem,
                             std::uint64_t fresh_seed, double tolerance) {
  IterationSeeds seeds = IterationSeeds::for_certificate(fresh_seed);
  auto [g, c] = backend.best_responses(mem, seeds.rbbr_g, seeds.rbbr_c);
  double u = backend.test_g(mem, g, seeds.test) + backend.test_c(mem, c, seeds.test);
  return {u, u <= tolerance};
}

// ---------------------------------------------------------------------------
// Generator/classifier game.

struct PnmState : PnmMemory<MlpNet, MlpNet> {
  using PnmMemory::PnmMemory;

  // Caches over the fixed matrix-estimation draw: each generator's fake
  // points and each classifier's mean measured realness of the real points.
  mutable std::vector<Matrix> fake_cache;
  mutable std::vector<double> real_term_cache;
};

// Mixtures over the current subgame solution's support.
MixtureStrategy generator_mixture(const PnmState& state);
MixtureStrategy classifier_mixture(const PnmState& state);

// Seed of the common draw used for every payoff-matrix entry.
std::uint64_t matrix_seed(std::uint64_t master_seed);

PnmState pnm_init(const GangSpec& spec, const PnmConfig& cfg);
PnmState pnm_iterate(PnmState state, const GangSpec& spec,
                     const PnmConfig& cfg);

using PnmObserver = std::function<void(const PnmState&)>;

// pnm_init followed by iterations per cfg.mode; `observer` (if set) sees the
// state after init and after every iteration.
PnmState pnm_run(const GangSpec& spec, const PnmConfig& cfg,
                 const PnmObserver& observer = {});

Certificate rb_ne_certificate(const PnmState& state, const GangSpec& spec,
                              const PnmConfig& cfg,
                              std::uint64_t fresh_attack_seed);

// Checkpoint directory layout:
//   strategies/g_NNN.mlp, strategies/c_NNN.mlp   (binary net format)
//   matrix.csv       estimated u_G matrix
//   ne.csv           player,index,weight
//   history.csv      iteration,u_brs_g,u_brs_c,u_brs,accepted,value
//   timing.csv       iteration,wall_seconds
void write_checkpoint(const std::filesystem::path& dir, const PnmState& state);

struct LoadedSolution {
  std::vector<MlpNet> g_strats;
  std::vector<MlpNet> c_strats;
  MixedStrategy g_weights;
  MixedStrategy c_weights;
  MixtureStrategy generator_mixture() const;
  MixtureStrategy classifier_mixture() const;
};
LoadedSolution load_solution(const std::filesystem::path& dir);

void write_history_csv(std::ostream& out,
                       const std::vector<IterationRecord>& history);

// ---------------------------------------------------------------------------
// Exact-oracle harness: the same loop on an explicit matrix game, with exact
// pure best responses in place of trained networks.

struct MatrixPnmConfig {
  PnmMode mode = PnmMode::kDeterministicStop;
  int max_iterations = 1000;
};

struct MatrixPnmResult {
  GameSolution solution;  // lifted to the full game
  std::vector<std::size_t> row_strategies;
  std::vector<std::size_t> col_strategies;
  std::vector<IterationRecord> history;
  bool terminated = false;

  std::size_t iterations() const { return history.size(); }
};

MatrixPnmResult pnm_on_matrix(const PayoffMatrix& full,
                              const MatrixPnmConfig& cfg = {});

// Exact counterpart of rb_ne_certificate: best-response gain against a
// full-game profile.
Certificate matrix_certificate(const PayoffMatrix& full,
                               const StrategyProfile& profile,
                               double tolerance);

}  // namespace pnmgang

#endif  // PNMGANG_PNM_H_
