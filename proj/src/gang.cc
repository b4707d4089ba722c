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

#include "pnmgang/gang.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "pnmgang/random.h"

namespace pnmgang {

void MeasuringFn::validate() const {
  if (kind == Kind::kLog && !(clamp_eps > 0.0 && clamp_eps < 0.5)) {
    throw std::invalid_argument("clamp_eps must lie in (0, 0.5)");
  }
}

double MeasuringFn::operator()(double p) const {
  if (kind == Kind::kIdentity) return p;
  return std::log(std::clamp(p, clamp_eps, 1.0 - clamp_eps));
}

double MeasuringFn::derivative(double p) const {
  if (kind == Kind::kIdentity) return 1.0;
  if (p < clamp_eps || p > 1.0 - clamp_eps) return 0.0;
  return 1.0 / p;
}

Sampler standard_normal_sampler(int dim) {
  if (dim < 1) throw std::invalid_argument("latent dimension must be positive");
  return [dim](std::size_t n, std::uint64_t seed) {
    Rng rng = make_rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix z(dim, static_cast<Eigen::Index>(n));
    for (Eigen::Index j = 0; j < z.cols(); ++j) {
      for (Eigen::Index i = 0; i < z.rows(); ++i) z(i, j) = normal(rng);
    }
    return z;
  };
}

void GangSpec::validate() const {
  if (!real_sampler || !latent_sampler) {
    throw std::invalid_argument("gang spec needs real and latent samplers");
  }
  gen_arch.validate();
  clf_arch.validate();
  phi.validate();
  if (gen_arch.input_dim() != latent_dim || gen_arch.output_dim() != data_dim) {
    throw std::invalid_argument("generator must map latent_dim to data_dim");
  }
  if (clf_arch.input_dim() != data_dim || clf_arch.output_dim() != 1 ||
      clf_arch.activations.back() != Activation::kSigmoid) {
    throw std::invalid_argument("classifier must map data_dim to one sigmoid output");
  }
}

Architecture default_generator_arch(int latent_dim, int data_dim, int width) {
  return make_mlp(latent_dim, {width, width}, data_dim, Activation::kRelu,
                  Activation::kLinear);
}

Architecture default_classifier_arch(int data_dim, int width) {
  return make_mlp(data_dim, {width, width}, 1, Activation::kRelu,
                  Activation::kSigmoid);
}

MixtureStrategy MixtureStrategy::single(MlpNet net) {
  std::vector<MlpNet> comps;
  comps.push_back(std::move(net));
  return {std::move(comps), MixedStrategy::pure(1, 0)};
}

void MixtureStrategy::validate() const {
  if (components.empty() || components.size() != weights.size()) {
    throw std::invalid_argument("mixture needs one weight per component");
  }
  for (const auto& c : components) {
    if (!(c.arch() == components.front().arch())) {
      throw std::invalid_argument("mixture components must share an architecture");
    }
  }
}

std::size_t MixtureStrategy::total_params() const {
  std::size_t n = 0;
  for (std::size_t k = 0; k < components.size(); ++k) {
    if (weights[k] > 0.0) n += components[k].params().size();
  }
  return n;
}

void RbbrConfig::validate() const {
  if (steps < 0) throw std::invalid_argument("rbbr steps must be non-negative");
  if (batch_size < 1) throw std::invalid_argument("rbbr batch_size must be positive");
  if (!(optimizer.learning_rate > 0.0)) {
    throw std::invalid_argument("rbbr learning_rate must be positive");
  }
}

Matrix sample_fake(const MixtureStrategy& g, const GangSpec& spec,
                   std::size_t n, std::uint64_t seed) {
  g.validate();
  Matrix latents = spec.latent_sampler(n, derive_seed(seed, "latent"));
  if (latents.rows() != spec.latent_dim) {
    throw std::invalid_argument("latent sampler returned the wrong dimension");
  }
  if (g.components.size() == 1) return forward_batch(g.components[0], latents);

  Rng rng = make_rng(derive_seed(seed, "component"));
  std::discrete_distribution<std::size_t> pick(g.weights.probs().begin(),
                                               g.weights.probs().end());
  std::vector<std::vector<Eigen::Index>> members(g.components.size());
  for (std::size_t i = 0; i < n; ++i) {
    members[pick(rng)].push_back(static_cast<Eigen::Index>(i));
  }
  Matrix out(spec.data_dim, static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < members.size(); ++k) {
    const auto& idx = members[k];
    if (idx.empty()) continue;
    Matrix z(latents.rows(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t b = 0; b < idx.size(); ++b) {
      z.col(static_cast<Eigen::Index>(b)) = latents.col(idx[b]);
    }
    Matrix x = forward_batch(g.components[k], z);
    for (std::size_t b = 0; b < idx.size(); ++b) {
      out.col(idx[b]) = x.col(static_cast<Eigen::Index>(b));
    }
  }
  return out;
}

double mean_measure(const MlpNet& c, const Matrix& points,
                    const MeasuringFn& phi) {
  if (points.cols() == 0) throw std::invalid_argument("no points to measure");
  Matrix p = forward_batch(c, points);
  double sum = 0.0;
  for (Eigen::Index j = 0; j < p.cols(); ++j) sum += phi(p(0, j));
  return sum / static_cast<double>(p.cols());
}

double payoff_uc_on_samples(const MlpNet& c, const Matrix& real,
                            const Matrix& fake, const MeasuringFn& phi) {
  return mean_measure(c, real, phi) - mean_measure(c, fake, phi);
}

double payoff_uc(const MixtureStrategy& g, const MlpNet& c,
                 const GangSpec& spec, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("payoff needs at least one sample");
  Matrix real = spec.real_sampler(n, derive_seed(seed, "real"));
  Matrix fake = sample_fake(g, spec, n, derive_seed(seed, "fake"));
  if (real.rows() != spec.data_dim || fake.rows() != spec.data_dim) {
    throw std::invalid_argument("sample dimension does not match data_dim");
  }
  return payoff_uc_on_samples(c, real, fake, spec.phi);
}

double payoff_uc(const MlpNet& g, const MlpNet& c, const GangSpec& spec,
                 std::size_t n, std::uint64_t seed) {
  return payoff_uc(MixtureStrategy::single(g), c, spec, n, seed);
}

double payoff_ug(const MixtureStrategy& g, const MlpNet& c,
                 const GangSpec& spec, std::size_t n, std::uint64_t seed) {
  return -payoff_uc(g, c, spec, n, seed);
}

double payoff_ug(const MlpNet& g, const MlpNet& c, const GangSpec& spec,
                 std::size_t n, std::uint64_t seed) {
  return -payoff_uc(g, c, spec, n, seed);
}

double payoff_ug_vs_mixture(const MlpNet& g, const MixtureStrategy& mu_c,
                            const GangSpec& spec, std::size_t n,
                            std::uint64_t seed) {
  mu_c.validate();
  if (n == 0) throw std::invalid_argument("payoff needs at least one sample");
  Matrix real = spec.real_sampler(n, derive_seed(seed, "real"));
  Matrix fake = sample_fake(MixtureStrategy::single(g), spec, n,
                            derive_seed(seed, "fake"));
  double total = 0.0;
  for (std::size_t k = 0; k < mu_c.components.size(); ++k) {
    if (mu_c.weights[k] == 0.0) continue;
    total -= mu_c.weights[k] *
             payoff_uc_on_samples(mu_c.components[k], real, fake, spec.phi);
  }
  return total;
}

GeneratorObjective generator_objective(const MlpNet& g,
                                       const MixtureStrategy& mu_c,
                                       const Matrix& latents,
                                       const MeasuringFn& phi) {
  mu_c.validate();
  ForwardTrace gen = forward_trace(g, latents);
  const Matrix& fake = gen.result();
  const double inv_b = 1.0 / static_cast<double>(fake.cols());
  Matrix d_fake = Matrix::Zero(fake.rows(), fake.cols());
  double value = 0.0;
  for (std::size_t k = 0; k < mu_c.components.size(); ++k) {
    const double w = mu_c.weights[k];
    if (w == 0.0) continue;
    const MlpNet& c = mu_c.components[k];
    ForwardTrace clf = forward_trace(c, fake);
    const Matrix& p = clf.result();
    Matrix up(1, p.cols());
    double sum = 0.0;
    for (Eigen::Index j = 0; j < p.cols(); ++j) {
      sum += phi(p(0, j));
      up(0, j) = w * inv_b * phi.derivative(p(0, j));
    }
    value += w * sum * inv_b;
    d_fake += backward_batch(c, clf, up, nullptr);
  }
  GeneratorObjective out{value, std::vector<double>(g.params().size(), 0.0)};
  backward_batch(g, gen, d_fake, &out.grad);
  return out;
}

namespace {

// Axis-aligned box around the columns of `a` and `b`; uniform draws inside.
Matrix uniform_in_bounding_box(const Matrix& a, const Matrix& b,
                               std::size_t n, std::uint64_t seed) {
  Eigen::VectorXd lo = a.rowwise().minCoeff().cwiseMin(b.rowwise().minCoeff());
  Eigen::VectorXd hi = a.rowwise().maxCoeff().cwiseMax(b.rowwise().maxCoeff());
  Rng rng = make_rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Matrix out(a.rows(), static_cast<Eigen::Index>(n));
  for (Eigen::Index j = 0; j < out.cols(); ++j) {
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
      out(i, j) = lo(i) + (hi(i) - lo(i)) * unit(rng);
    }
  }
  return out;
}

}  // namespace

void check_finite(const MlpNet& net, const char* who) {
  for (double p : net.params()) {
    if (!std::isfinite(p)) {
      throw NumericalError(std::string(who) + ": training diverged");
    }
  }
}

void classifier_update(MlpNet& c, Optimizer& opt, const MixtureStrategy& mu_g,
                       const GangSpec& spec, const RbbrConfig& cfg, int step) {
  const auto batch = static_cast<std::size_t>(cfg.batch_size);
  const auto s = static_cast<std::uint64_t>(step);
  Matrix real = spec.real_sampler(batch, derive_seed(cfg.seed, "real", {s}));
  Matrix fake = sample_fake(mu_g, spec, batch, derive_seed(cfg.seed, "fake", {s}));
  const Eigen::Index nr = real.cols();
  Eigen::Index nf = fake.cols();
  Matrix x;
  if (cfg.uniform_fake) {
    Matrix box = uniform_in_bounding_box(real, fake, batch,
                                         derive_seed(cfg.seed, "uniform", {s}));
    x.resize(spec.data_dim, nr + nf + box.cols());
    x << real, fake, box;
    nf += box.cols();
  } else {
    x.resize(spec.data_dim, nr + nf);
    x << real, fake;
  }

  ForwardTrace trace = forward_trace(c, x);
  const Matrix& p = trace.result();
  Matrix up(1, p.cols());
  for (Eigen::Index j = 0; j < nr; ++j) {
    up(0, j) = spec.phi.derivative(p(0, j)) / static_cast<double>(nr);
  }
  for (Eigen::Index j = nr; j < p.cols(); ++j) {
    up(0, j) = -spec.phi.derivative(p(0, j)) / static_cast<double>(nf);
  }
  std::vector<double> grad(c.params().size(), 0.0);
  backward_batch(c, trace, up, &grad);
  opt.ascend(c.mutable_params(), grad);
}

void generator_update(MlpNet& g, Optimizer& opt, const MixtureStrategy& mu_c,
                      const GangSpec& spec, const RbbrConfig& cfg, int step) {
  const auto batch = static_cast<std::size_t>(cfg.batch_size);
  const auto s = static_cast<std::uint64_t>(step);
  Matrix z = spec.latent_sampler(batch, derive_seed(cfg.seed, "latent", {s}));
  GeneratorObjective obj = generator_objective(g, mu_c, z, spec.phi);
  opt.ascend(g.mutable_params(), obj.grad);
}

MlpNet rbbr_classifier(const MixtureStrategy& mu_g, const GangSpec& spec,
                       const RbbrConfig& cfg) {
  cfg.validate();
  mu_g.validate();
  MlpNet c = init_random(spec.clf_arch, cfg.seed);
  Optimizer opt(cfg.optimizer, c.params().size());
  for (int step = 0; step < cfg.steps; ++step) {
    classifier_update(c, opt, mu_g, spec, cfg, step);
  }
  check_finite(c, "rbbr_classifier");
  return c;
}

MlpNet rbbr_generator(const MixtureStrategy& mu_c, const GangSpec& spec,
                      const RbbrConfig& cfg) {
  cfg.validate();
  mu_c.validate();
  MlpNet g = init_random(spec.gen_arch, cfg.seed);
  Optimizer opt(cfg.optimizer, g.params().size());
  for (int step = 0; step < cfg.steps; ++step) {
    generator_update(g, opt, mu_c, spec, cfg, step);
  }
  check_finite(g, "rbbr_generator");
  return g;
}

}  // namespace pnmgang
