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

#include "pnmgang/config.h"

#include <sstream>
#include <string>

#include "doctest.h"

namespace pnmgang {
namespace {

ExperimentConfig from_text(const std::string& text) {
  std::istringstream in(text);
  return config_from_ini(parse_ini(in));
}

std::string error_key(const std::string& text) {
  try {
    from_text(text);
  } catch (const ConfigError& e) {
    return e.key();
  }
  return "<no error>";
}

TEST_CASE("parser basics") {
  std::istringstream in(
      "# comment\n; other comment\n\n[task]\n  name = \"grid9\"  \n[gang]\ngen_hidden=16, 8\n");
  IniDocument doc = parse_ini(in);
  CHECK(doc.at("task").at("name") == "grid9");
  CHECK(doc.at("gang").at("gen_hidden") == "16, 8");
}

TEST_CASE("defaults") {
  ExperimentConfig c = from_text("[task]\nname = grid9\n");
  CHECK(c.task_name == "grid9");
  CHECK(c.master_seed == 0);
  CHECK(c.latent_dim == 8);
  CHECK(c.gen_hidden == std::vector<int>{32, 32});
  CHECK(c.pnm.mode == PnmMode::kFixedIterations);
  CHECK(c.pnm.iterations == 30);
  CHECK(c.pnm.rbbr_g.steps == 1000);
  CHECK(c.pnm.rbbr_c.uniform_fake);
  CHECK(!c.attack_rbbr.uniform_fake);
  CHECK(c.attack_rbbr.steps == c.pnm.rbbr_g.steps);
  CHECK(c.attack_restarts == 3);
  CHECK(c.attack_enabled);
}

TEST_CASE("explicit values") {
  ExperimentConfig c = from_text(
      "[experiment]\nmaster_seed = 42\njobs = 2\n"
      "[task]\nname = random16\nseed = 3\n"
      "[gang]\ngen_hidden = 64,64,64\nactivation = tanh\nphi = identity\n"
      "[pnm]\nmode = stop\niterations = 50\n"
      "[rbbr_g]\nsteps = 200\noptimizer = sgd\nlearning_rate = 0.01\n"
      "[rbbr_c]\nuniform_fake = false\n"
      "[attack]\nenabled = false\n");
  CHECK(c.master_seed == 42);
  CHECK(c.jobs == 2);
  CHECK(c.task_seed == 3);
  CHECK(c.gen_hidden.size() == 3);
  CHECK(c.hidden_activation == Activation::kTanh);
  CHECK(c.phi.kind == MeasuringFn::Kind::kIdentity);
  CHECK(c.pnm.mode == PnmMode::kDeterministicStop);
  CHECK(c.pnm.iterations == 50);
  CHECK(c.pnm.rbbr_g.optimizer.kind == OptimizerConfig::Kind::kSgd);
  CHECK(c.pnm.rbbr_g.optimizer.learning_rate == 0.01);
  CHECK(!c.pnm.rbbr_c.uniform_fake);
  CHECK(c.attack_rbbr.steps == 200);
  CHECK(c.attack_gen_hidden == c.gen_hidden);
  CHECK(!c.attack_enabled);
}

TEST_CASE("errors name the offending key") {
  CHECK(error_key("") == "task.name");
  CHECK(error_key("[task]\nname = grid7\n") == "task.name");
  CHECK(error_key("[task]\nname = grid9\nname = grid9\n") == "task.name");
  CHECK(error_key("[task]\nname = grid9\ncolour = red\n") == "task.colour");
  CHECK(error_key("[tsak]\nname = grid9\n") == "tsak");
  CHECK(error_key("[task]\nname = grid9\n[pnm]\niterations = many\n") == "pnm.iterations");
  CHECK(error_key("[task]\nname = grid9\n[pnm]\niterations = 0\n") == "pnm.iterations");
  CHECK(error_key("[task]\nname = grid9\n[pnm]\nmode = sometimes\n") == "pnm.mode");
  CHECK(error_key("[task]\nname = grid9\n[rbbr_c]\noptimizer = rmsprop\n") == "rbbr_c.optimizer");
  CHECK(error_key("[task]\nname = grid9\n[rbbr_g]\nlearning_rate = -1\n") == "rbbr_g.learning_rate");
  CHECK(error_key("[task]\nname = grid9\n[gang]\ngen_hidden = 8,0\n") == "gang.gen_hidden");
  CHECK(error_key("[task]\nname = grid9\n[attack]\nenabled = maybe\n") == "attack.enabled");
  CHECK(error_key("name = grid9\n") == "name");
  CHECK_THROWS_AS(load_config("/nonexistent/config.ini"), ConfigError);
}

TEST_CASE("resolved config round trips") {
  ExperimentConfig c = from_text(
      "[experiment]\nmaster_seed = 9\n[task]\nname = annulus16\n"
      "[rbbr_c]\nlearning_rate = 3e-4\n[pnm]\nmode = stop\n");
  const std::string text = to_ini(c);
  CHECK(to_ini(from_text(text)) == text);
  ExperimentConfig back = from_text(text);
  CHECK(back.master_seed == 9);
  CHECK(back.pnm.rbbr_c.optimizer.learning_rate == 3e-4);
  CHECK(back.pnm.mode == PnmMode::kDeterministicStop);
}

TEST_CASE("slow generator preset") {
  ExperimentConfig c = from_text("[task]\nname = grid9\n");
  const double lr_c = c.pnm.rbbr_c.optimizer.learning_rate;
  apply_slow_g_preset(c);
  CHECK(c.pnm.rbbr_g.optimizer.learning_rate == 1e-4);
  CHECK(c.pnm.rbbr_c.optimizer.learning_rate == lr_c);
}

}  // namespace
}  // namespace pnmgang
