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

#ifndef PNMGANG_NEURAL_H_
#define PNMGANG_NEURAL_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace pnmgang {

// Samples are stored as columns throughout: a batch of B points in R^d is a
// d x B matrix.
using Matrix = Eigen::MatrixXd;

enum class Activation : std::uint8_t {
  kRelu = 0,
  kTanh = 1,
  kSigmoid = 2,
  kLinear = 3,
};

std::string_view activation_name(Activation a);
Activation parse_activation(std::string_view name);

// layer_sizes[0] is the input dimension, layer_sizes.back() the output
// dimension; activations[l] is applied after weight layer l.
struct Architecture {
  std::vector<int> layer_sizes;
  std::vector<Activation> activations;

  std::size_t weight_layers() const { return activations.size(); }
  int input_dim() const { return layer_sizes.front(); }
  int output_dim() const { return layer_sizes.back(); }
  void validate() const;

  bool operator==(const Architecture&) const = default;
};

// Fully connected net: `hidden_act` on every hidden layer, `output_act` last.
Architecture make_mlp(int input_dim, const std::vector<int>& hidden,
                      int output_dim, Activation hidden_act,
                      Activation output_act);

// sum_l (n_l * n_{l+1} + n_{l+1})
std::size_t param_count(const Architecture& arch);

// Parameters in canonical order: for each weight layer l, the
// n_{l+1} x n_l weight matrix row-major (row = output unit), then the
// n_{l+1} biases.
class MlpNet {
 public:
  MlpNet(Architecture arch, std::vector<double> params);

  const Architecture& arch() const { return arch_; }
  std::span<const double> params() const { return params_; }
  std::span<double> mutable_params() { return params_; }

  // Offset of layer l's weight block inside params().
  std::size_t layer_offset(std::size_t l) const { return offsets_[l]; }

  bool operator==(const MlpNet& o) const {
    return arch_ == o.arch_ && params_ == o.params_;
  }

 private:
  Architecture arch_;
  std::vector<double> params_;
  std::vector<std::size_t> offsets_;
};

// Xavier-uniform weights in +-sqrt(6 / (fan_in + fan_out)), zero biases.
MlpNet init_random(const Architecture& arch, std::uint64_t seed);

std::vector<double> forward(const MlpNet& net, std::span<const double> input);

struct Gradients {
  std::vector<double> params;
  std::vector<double> input;
};

// Gradient of <upstream, forward(net, input)> w.r.t. params and input.
Gradients backward(const MlpNet& net, std::span<const double> input,
                   std::span<const double> upstream);

// Post-activation outputs of every layer; outputs[0] is the input batch.
struct ForwardTrace {
  std::vector<Matrix> outputs;
  const Matrix& result() const { return outputs.back(); }
};

Matrix forward_batch(const MlpNet& net, const Matrix& inputs);
ForwardTrace forward_trace(const MlpNet& net, const Matrix& inputs);

// Backpropagates `upstream` (output_dim x B) through a recorded trace. Adds
// the batch-summed parameter gradient into `param_grad` when non-null and
// returns the input gradient (input_dim x B).
Matrix backward_batch(const MlpNet& net, const ForwardTrace& trace,
                      const Matrix& upstream, std::vector<double>* param_grad);

// Binary format, all integers and floats little-endian:
//   "MLPN"  u32 version=1  u32 num_sizes  u32 sizes[num_sizes]
//   u8 activations[num_sizes - 1]  u64 num_params  f64 params[num_params]
std::string serialize(const MlpNet& net);
MlpNet deserialize(std::string_view bytes);
void save_net(const std::filesystem::path& path, const MlpNet& net);
MlpNet load_net(const std::filesystem::path& path);

struct OptimizerConfig {
  enum class Kind { kSgd, kAdam };
  Kind kind = Kind::kAdam;
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

// Gradient-ascent optimizer owning its per-parameter state.
class Optimizer {
 public:
  Optimizer(const OptimizerConfig& cfg, std::size_t n);
  void ascend(std::span<double> params, std::span<const double> grad);

 private:
  OptimizerConfig cfg_;
  std::vector<double> m_;
  std::vector<double> v_;
  long step_ = 0;
};

}  // namespace pnmgang

#endif  // PNMGANG_NEURAL_H_
