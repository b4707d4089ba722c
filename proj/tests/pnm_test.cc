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

#include <filesystem>
#include <random>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "oracles.h"
#include "pnmgang/tasks.h"

namespace pnmgang {
namespace {

PayoffMatrix to_payoff(const oracle::Mat& a) {
  std::vector<std::vector<double>> rows(a.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) rows[i].push_back(a(i, j));
  return PayoffMatrix::from_rows(rows);
}

GangSpec small_spec() {
  GaussianMixtureTask task = make_task("grid9", 0);
  GangSpec s;
  s.real_sampler = [task](std::size_t n, std::uint64_t seed) { return sample_real(task, n, seed); };
  s.latent_sampler = standard_normal_sampler(8);
  s.gen_arch = default_generator_arch(8, 2, 8);
  s.clf_arch = default_classifier_arch(2, 8);
  return s;
}

PnmConfig small_config() {
  PnmConfig cfg;
  cfg.iterations = 3;
  cfg.rbbr_g.steps = 30;
  cfg.rbbr_c.steps = 30;
  cfg.rbbr_g.batch_size = 32;
  cfg.rbbr_c.batch_size = 32;
  cfg.eval_samples = 400;
  cfg.master_seed = 7;
  return cfg;
}

TEST_CASE("exact-oracle PNM reaches the game value") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 15; ++t) {
    oracle::Mat a = oracle::random_matrix(6, 7, rng);
    auto eq = oracle::support_enumeration(a);
    REQUIRE(eq.has_value());
    MatrixPnmResult r = pnm_on_matrix(to_payoff(a));
    CHECK(r.terminated);
    CHECK(r.solution.value == doctest::Approx(eq->value).epsilon(1e-8));
    Eigen::VectorXd x(6), y(7);
    for (int i = 0; i < 6; ++i) x(i) = r.solution.row_strategy[i];
    for (int j = 0; j < 7; ++j) y(j) = r.solution.col_strategy[j];
    CHECK(oracle::epsilon(a, x, y) < 1e-8);
    Certificate c = matrix_certificate(to_payoff(a),
                                       {r.solution.row_strategy, r.solution.col_strategy}, 1e-8);
    CHECK(c.certified);
  }
}

TEST_CASE("a dominant row is found at once") {
  PayoffMatrix m = PayoffMatrix::from_rows({{0, 1, 2}, {5, 6, 7}, {1, 0, 3}});
  MatrixPnmResult r = pnm_on_matrix(m);
  CHECK(r.solution.value == doctest::Approx(5.0));
  CHECK(r.row_strategies.size() <= 2);
  CHECK(r.solution.row_strategy[1] == doctest::Approx(1.0));
}

TEST_CASE("fixed mode runs every iteration") {
  PayoffMatrix m = PayoffMatrix::from_rows({{1, -1}, {-1, 1}});
  MatrixPnmConfig cfg;
  cfg.mode = PnmMode::kFixedIterations;
  cfg.max_iterations = 12;
  MatrixPnmResult r = pnm_on_matrix(m, cfg);
  CHECK(r.iterations() == 12);
  CHECK(!r.terminated);
  CHECK(r.solution.value == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("iteration seeds differ by tag and index") {
  IterationSeeds a = IterationSeeds::for_iteration(1, 1);
  IterationSeeds b = IterationSeeds::for_iteration(1, 2);
  CHECK(a.rbbr_g != a.rbbr_c);
  CHECK(a.rbbr_g != b.rbbr_g);
  CHECK(a.test != b.test);
}

TEST_CASE("neural PNM keeps a consistent memory") {
  GangSpec s = small_spec();
  PnmConfig cfg = small_config();
  int observed = 0;
  PnmState st = pnm_run(s, cfg, [&](const PnmState&) { ++observed; });
  CHECK(observed == cfg.iterations + 1);
  CHECK(st.history.size() == 3);
  CHECK(st.matrix.rows() == st.g_strats.size());
  CHECK(st.matrix.cols() == st.c_strats.size());

  // Matrix entries are u_G on the shared draw; u_C is their negation.
  const std::uint64_t ms = matrix_seed(cfg.master_seed);
  for (std::size_t i = 0; i < st.g_strats.size(); ++i) {
    for (std::size_t j = 0; j < st.c_strats.size(); ++j) {
      const double e = payoff_ug(st.g_strats[i], st.c_strats[j], s, cfg.eval_samples, ms);
      CHECK(st.matrix(i, j) == doctest::Approx(e).epsilon(1e-12));
      CHECK(-st.matrix(i, j) ==
            doctest::Approx(payoff_uc(st.g_strats[i], st.c_strats[j], s, cfg.eval_samples, ms))
                .epsilon(1e-12));
    }
  }
  for (const auto& h : st.history) CHECK(h.accepted == (h.u_brs > 0.0));

  PnmState again = pnm_run(s, cfg);
  CHECK(again.matrix == st.matrix);
  PnmConfig par = cfg;
  par.jobs = 2;
  CHECK(pnm_run(s, par).matrix == st.matrix);
}

TEST_CASE("checkpoints round-trip") {
  GangSpec s = small_spec();
  PnmConfig cfg = small_config();
  cfg.iterations = 2;
  PnmState st = pnm_run(s, cfg);
  auto dir = std::filesystem::temp_directory_path() / "pnmgang_pnm_test_ckpt";
  std::filesystem::remove_all(dir);
  write_checkpoint(dir, st);
  for (const char* f : {"matrix.csv", "ne.csv", "history.csv", "timing.csv"})
    CHECK(std::filesystem::exists(dir / f));
  LoadedSolution sol = load_solution(dir);
  CHECK(sol.g_strats.size() == st.g_strats.size());
  CHECK(sol.c_strats.size() == st.c_strats.size());
  for (std::size_t i = 0; i < sol.g_strats.size(); ++i) CHECK(sol.g_strats[i] == st.g_strats[i]);
  for (std::size_t i = 0; i < sol.g_weights.size(); ++i)
    CHECK(sol.g_weights[i] == doctest::Approx(st.ne.row_strategy[i]).epsilon(1e-15));
  std::ostringstream h;
  write_history_csv(h, st.history);
  CHECK(h.str().rfind("iteration,u_brs_g,u_brs_c,u_brs,accepted,value", 0) == 0);
  std::filesystem::remove_all(dir);
}

TEST_CASE("deterministic stop and certificate") {
  GangSpec s = small_spec();
  PnmConfig cfg = small_config();
  cfg.mode = PnmMode::kDeterministicStop;
  cfg.iterations = 4;
  PnmState st = pnm_run(s, cfg);
  CHECK(st.history.size() <= 4);
  if (st.terminated) CHECK(!st.history.back().accepted);
  Certificate c1 = rb_ne_certificate(st, s, cfg, 99);
  Certificate c2 = rb_ne_certificate(st, s, cfg, 99);
  CHECK(c1.u_brs_fresh == c2.u_brs_fresh);
  CHECK(c1.certified == (c1.u_brs_fresh <= cfg.rb_ne_tolerance));
}

TEST_CASE("config validation") {
  PnmConfig cfg;
  cfg.eval_samples = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

}  // namespace
}  // namespace pnmgang
