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

#ifndef PNMGANG_GANG_H_
#define PNMGANG_GANG_H_

#include <cstdint>
#include <functional>
#include <vector>

#include "pnmgang/game.h"
#include "pnmgang/neural.h"

namespace pnmgang {

// Maps a classifier output in [0, 1] to the payoff scale. The log variant
// clamps its argument to [clamp_eps, 1 - clamp_eps]; the derivative is zero
// wherever the clamp is active.
struct MeasuringFn {
  enum class Kind { kLog, kIdentity };
  Kind kind = Kind::kLog;
  double clamp_eps = 1e-7;

  void validate() const;
  double operator()(double p) const;
  double derivative(double p) const;
};

// Draws n points (as columns) from a distribution; a pure function of seed.
using Sampler = std::function<Matrix(std::size_t n, std::uint64_t seed)>;

Sampler standard_normal_sampler(int dim);

// Data distribution, latent distribution, network classes and measuring
// function of a generator/classifier game.
struct GangSpec {
  Sampler real_sampler;
  Sampler latent_sampler;
  int data_dim = 2;
  int latent_dim = 8;
  Architecture gen_arch;
  Architecture clf_arch;
  MeasuringFn phi;

  void validate() const;
};

Architecture default_generator_arch(int latent_dim = 8, int data_dim = 2,
                                    int width = 32);
Architecture default_classifier_arch(int data_dim = 2, int width = 32);

struct MixtureStrategy {
  std::vector<MlpNet> components;
  MixedStrategy weights;

  static MixtureStrategy single(MlpNet net);
  void validate() const;
  std::size_t total_params() const;
};

struct RbbrConfig {
  int steps = 1000;
  int batch_size = 128;
  OptimizerConfig optimizer;
  std::uint64_t seed = 0;
  // Classifier only: add batch_size uniform points from the bounding box of
  // each step's real and fake batch, labeled fake.
  bool uniform_fake = false;

  void validate() const;
};

// n fake points: a component is drawn per point from the mixture weights,
// then a latent from the latent sampler.
Matrix sample_fake(const MixtureStrategy& g, const GangSpec& spec,
                   std::size_t n, std::uint64_t seed);

// Mean of phi(C(x)) over the columns of `points`.
double mean_measure(const MlpNet& c, const Matrix& points,
                    const MeasuringFn& phi);

// u_C = E_real[phi(C(x))] - E_fake[phi(C(x))] on fixed samples.
double payoff_uc_on_samples(const MlpNet& c, const Matrix& real,
                            const Matrix& fake, const MeasuringFn& phi);

// Monte Carlo estimate with n real and n fake points drawn from `seed`.
double payoff_uc(const MixtureStrategy& g, const MlpNet& c,
                 const GangSpec& spec, std::size_t n, std::uint64_t seed);
double payoff_uc(const MlpNet& g, const MlpNet& c, const GangSpec& spec,
                 std::size_t n, std::uint64_t seed);

// Exactly -payoff_uc on the same draw.
double payoff_ug(const MixtureStrategy& g, const MlpNet& c,
                 const GangSpec& spec, std::size_t n, std::uint64_t seed);
double payoff_ug(const MlpNet& g, const MlpNet& c, const GangSpec& spec,
                 std::size_t n, std::uint64_t seed);

// u_G(g, mu_C) = sum_k mu_C(k) u_G(g, C_k), every term on the same draw.
double payoff_ug_vs_mixture(const MlpNet& g, const MixtureStrategy& mu_c,
                            const GangSpec& spec, std::size_t n,
                            std::uint64_t seed);

// The part of u_G(g, mu_C) that depends on the generator,
//   sum_k mu_C(k) * mean_b phi(C_k(G(z_b))),
// and its gradient w.r.t. the generator parameters. Components are handled
// one at a time and zero-weight components are skipped.
struct GeneratorObjective {
  double value;
  std::vector<double> grad;
};
GeneratorObjective generator_objective(const MlpNet& g,
                                       const MixtureStrategy& mu_c,
                                       const Matrix& latents,
                                       const MeasuringFn& phi);

// Resource-bounded best responses: a fresh init_random(arch, cfg.seed) net
// trained for exactly cfg.steps optimizer updates.
MlpNet rbbr_classifier(const MixtureStrategy& mu_g, const GangSpec& spec,
                       const RbbrConfig& cfg);
MlpNet rbbr_generator(const MixtureStrategy& mu_c, const GangSpec& spec,
                      const RbbrConfig& cfg);

// Single optimizer updates (step index `step`, batches seeded from cfg.seed)
// as used by the loops above.
void classifier_update(MlpNet& c, Optimizer& opt, const MixtureStrategy& mu_g,
                       const GangSpec& spec, const RbbrConfig& cfg, int step);
void generator_update(MlpNet& g, Optimizer& opt, const MixtureStrategy& mu_c,
                      const GangSpec& spec, const RbbrConfig& cfg, int step);

// Throws std::runtime_error("training diverged ...") on non-finite params.
void check_finite(const MlpNet& net, const char* who);

}  // namespace pnmgang

#endif  // PNMGANG_GANG_H_
