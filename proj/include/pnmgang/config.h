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

#ifndef PNMGANG_CONFIG_H_
#define PNMGANG_CONFIG_H_

// Experiment configuration files.
//
// Grammar (one construct per line, surrounding whitespace ignored):
//   # comment            or   ; comment
//   [section]
//   key = value          value may be wrapped in double quotes
// Every key belongs to a section. Duplicate keys, unknown sections and
// unknown keys are errors. Lists are comma separated ("32,32").
//
// Sections and keys (defaults in parentheses):
//   [experiment] master_seed (0), output_dir ("out"), jobs (1)
//   [task]       name (required: grid9 grid16 annulus9 annulus16 random9
//                random16), seed (0)
//   [gang]       latent_dim (8), gen_hidden (32,32), clf_hidden (32,32),
//                activation (relu), phi (log | identity), clamp_eps (1e-7)
//   [pnm]        mode (fixed | stop), iterations (30), eval_samples (10000),
//                rb_ne_tolerance (0.05)
//   [rbbr_g]     steps (1000), batch_size (128), optimizer (adam | sgd),
//                learning_rate (1e-3), beta1 (0.9), beta2 (0.999),
//                epsilon (1e-8)
//   [rbbr_c]     as rbbr_g, plus uniform_fake (true)
//   [attack]     enabled (true), gen_hidden / clf_hidden (as [gang]),
//                steps (as rbbr_g), batch_size (128), learning_rate (1e-3),
//                restarts (3), uniform_fake (false)
//   [eval]       surface_resolution (200), surface_inflate (0.2),
//                coverage_radius_mult (3), coverage_threshold (0.01),
//                indifference_samples (10000), scatter_samples (1000)

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "pnmgang/eval.h"
#include "pnmgang/gang.h"
#include "pnmgang/pnm.h"

namespace pnmgang {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(key.empty() ? message : key + ": " + message),
        key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

// section -> key -> raw value
using IniDocument = std::map<std::string, std::map<std::string, std::string>>;

IniDocument parse_ini(std::istream& in);

struct ExperimentConfig {
  std::uint64_t master_seed = 0;
  std::string output_dir = "out";
  int jobs = 1;

  std::string task_name;
  std::uint64_t task_seed = 0;

  int latent_dim = 8;
  std::vector<int> gen_hidden{32, 32};
  std::vector<int> clf_hidden{32, 32};
  Activation hidden_activation = Activation::kRelu;
  MeasuringFn phi;

  PnmConfig pnm = default_pnm_config();

  bool attack_enabled = true;
  std::vector<int> attack_gen_hidden{32, 32};
  std::vector<int> attack_clf_hidden{32, 32};
  RbbrConfig attack_rbbr;
  int attack_restarts = 3;

  int surface_resolution = 200;
  double surface_inflate = 0.2;
  double coverage_radius_mult = 3.0;
  double coverage_threshold = 0.01;
  std::size_t indifference_samples = 10000;
  std::size_t scatter_samples = 1000;

  static PnmConfig default_pnm_config();
  void validate() const;
};

// Unset keys keep their defaults; [task] name is required.
ExperimentConfig config_from_ini(const IniDocument& doc);
ExperimentConfig load_config(const std::string& path);

// Lower generator learning rate (1e-4).
void apply_slow_g_preset(ExperimentConfig& cfg);

// Fully resolved config in the same grammar; parses back to an equal config.
std::string to_ini(const ExperimentConfig& cfg);

}  // namespace pnmgang

#endif  // PNMGANG_CONFIG_H_
