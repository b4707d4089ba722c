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

#include "pnmgang/neural.h"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <random>
#include <stdexcept>

#include "pnmgang/random.h"

namespace pnmgang {
namespace {

using RowMajor =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstWeights = Eigen::Map<const RowMajor>;
using Weights = Eigen::Map<RowMajor>;
using ConstBias = Eigen::Map<const Eigen::VectorXd>;
using Bias = Eigen::Map<Eigen::VectorXd>;

void apply_activation(Activation a, Matrix& z) {
  switch (a) {
    case Activation::kRelu:
      z = z.cwiseMax(0.0);
      break;
    case Activation::kTanh:
      z = z.array().tanh().matrix();
      break;
    case Activation::kSigmoid:
      z = (1.0 / (1.0 + (-z.array()).exp())).matrix();
      break;
    case Activation::kLinear:
      break;
  }
}

// Multiplies `delta` in place by the activation derivative, expressed through
// the post-activation output y. ReLU'(0) = 0.
void scale_by_derivative(Activation a, const Matrix& y, Matrix& delta) {
  switch (a) {
    case Activation::kRelu:
      delta = (y.array() > 0.0).select(delta, 0.0);
      break;
    case Activation::kTanh:
      delta.array() *= 1.0 - y.array().square();
      break;
    case Activation::kSigmoid:
      delta.array() *= y.array() * (1.0 - y.array());
      break;
    case Activation::kLinear:
      break;
  }
}

template <typename T>
void put_le(std::string& out, T value) {
  using U = std::conditional_t<sizeof(T) == 8, std::uint64_t,
                               std::conditional_t<sizeof(T) == 4, std::uint32_t,
                                                   std::uint8_t>>;
  U bits = std::bit_cast<U>(value);
  for (std::size_t i = 0; i < sizeof(U); ++i) {
    out.push_back(static_cast<char>((bits >> (8 * i)) & 0xff));
  }
}

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  template <typename T>
  T get() {
    using U = std::conditional_t<sizeof(T) == 8, std::uint64_t,
                                 std::conditional_t<sizeof(T) == 4,
                                                    std::uint32_t, std::uint8_t>>;
    if (bytes_.size() - pos_ < sizeof(U)) {
      throw std::runtime_error("corrupt net file: truncated");
    }
    U bits = 0;
    for (std::size_t i = 0; i < sizeof(U); ++i) {
      bits |= static_cast<U>(static_cast<unsigned char>(bytes_[pos_ + i]))
              << (8 * i);
    }
    pos_ += sizeof(U);
    return std::bit_cast<T>(bits);
  }

  bool done() const { return pos_ == bytes_.size(); }

 private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

constexpr char kMagic[4] = {'M', 'L', 'P', 'N'};
constexpr std::uint32_t kFormatVersion = 1;

}  // namespace

std::string_view activation_name(Activation a) {
  switch (a) {
    case Activation::kRelu:
      return "relu";
    case Activation::kTanh:
      return "tanh";
    case Activation::kSigmoid:
      return "sigmoid";
    case Activation::kLinear:
      return "linear";
  }
  return "?";
}

Activation parse_activation(std::string_view name) {
  if (name == "relu") return Activation::kRelu;
  if (name == "tanh") return Activation::kTanh;
  if (name == "sigmoid") return Activation::kSigmoid;
  if (name == "linear") return Activation::kLinear;
  throw std::invalid_argument("unknown activation '" + std::string(name) + "'");
}

void Architecture::validate() const {
  if (layer_sizes.size() < 2) {
    throw std::invalid_argument("architecture needs at least one weight layer");
  }
  if (activations.size() != layer_sizes.size() - 1) {
    throw std::invalid_argument("architecture needs one activation per weight layer");
  }
  for (int s : layer_sizes) {
    if (s < 1) throw std::invalid_argument("layer sizes must be positive");
  }
}

Architecture make_mlp(int input_dim, const std::vector<int>& hidden,
                      int output_dim, Activation hidden_act,
                      Activation output_act) {
  Architecture a;
  a.layer_sizes.push_back(input_dim);
  a.layer_sizes.insert(a.layer_sizes.end(), hidden.begin(), hidden.end());
  a.layer_sizes.push_back(output_dim);
  a.activations.assign(hidden.size(), hidden_act);
  a.activations.push_back(output_act);
  a.validate();
  return a;
}

std::size_t param_count(const Architecture& arch) {
  arch.validate();
  std::size_t n = 0;
  for (std::size_t l = 0; l + 1 < arch.layer_sizes.size(); ++l) {
    auto in = static_cast<std::size_t>(arch.layer_sizes[l]);
    auto out = static_cast<std::size_t>(arch.layer_sizes[l + 1]);
    n += in * out + out;
  }
  return n;
}

MlpNet::MlpNet(Architecture arch, std::vector<double> params)
    : arch_(std::move(arch)), params_(std::move(params)) {
  if (params_.size() != param_count(arch_)) {
    throw std::invalid_argument("parameter vector length does not match architecture");
  }
  for (double p : params_) {
    if (!std::isfinite(p)) throw std::invalid_argument("non-finite parameter");
  }
  std::size_t off = 0;
  for (std::size_t l = 0; l < arch_.weight_layers(); ++l) {
    offsets_.push_back(off);
    auto in = static_cast<std::size_t>(arch_.layer_sizes[l]);
    auto out = static_cast<std::size_t>(arch_.layer_sizes[l + 1]);
    off += in * out + out;
  }
}

MlpNet init_random(const Architecture& arch, std::uint64_t seed) {
  std::vector<double> params(param_count(arch), 0.0);
  Rng rng = make_rng(seed);
  std::size_t off = 0;
  for (std::size_t l = 0; l < arch.weight_layers(); ++l) {
    int in = arch.layer_sizes[l];
    int out = arch.layer_sizes[l + 1];
    double bound = std::sqrt(6.0 / static_cast<double>(in + out));
    std::uniform_real_distribution<double> dist(-bound, bound);
    for (int k = 0; k < in * out; ++k) params[off + static_cast<std::size_t>(k)] = dist(rng);
    off += static_cast<std::size_t>(in * out + out);
  }
  return MlpNet(arch, std::move(params));
}

ForwardTrace forward_trace(const MlpNet& net, const Matrix& inputs) {
  const Architecture& arch = net.arch();
  if (inputs.rows() != arch.input_dim()) {
    throw std::invalid_argument("input dimension does not match network");
  }
  ForwardTrace trace;
  trace.outputs.reserve(arch.weight_layers() + 1);
  trace.outputs.push_back(inputs);
  const double* p = net.params().data();
  for (std::size_t l = 0; l < arch.weight_layers(); ++l) {
    int in = arch.layer_sizes[l];
    int out = arch.layer_sizes[l + 1];
    const double* w = p + net.layer_offset(l);
    ConstWeights weights(w, out, in);
    ConstBias bias(w + static_cast<std::ptrdiff_t>(in) * out, out);
    Matrix z = weights * trace.outputs.back();
    z.colwise() += bias;
    apply_activation(arch.activations[l], z);
    trace.outputs.push_back(std::move(z));
  }
  return trace;
}

Matrix forward_batch(const MlpNet& net, const Matrix& inputs) {
  const Architecture& arch = net.arch();
  if (inputs.rows() != arch.input_dim()) {
    throw std::invalid_argument("input dimension does not match network");
  }
  Matrix a = inputs;
  const double* p = net.params().data();
  for (std::size_t l = 0; l < arch.weight_layers(); ++l) {
    int in = arch.layer_sizes[l];
    int out = arch.layer_sizes[l + 1];
    const double* w = p + net.layer_offset(l);
    ConstWeights weights(w, out, in);
    ConstBias bias(w + static_cast<std::ptrdiff_t>(in) * out, out);
    Matrix z = weights * a;
    z.colwise() += bias;
    apply_activation(arch.activations[l], z);
    a = std::move(z);
  }
  return a;
}

Matrix backward_batch(const MlpNet& net, const ForwardTrace& trace,
                      const Matrix& upstream, std::vector<double>* param_grad) {
  const Architecture& arch = net.arch();
  if (trace.outputs.size() != arch.weight_layers() + 1) {
    throw std::invalid_argument("trace does not belong to this network");
  }
  if (upstream.rows() != arch.output_dim() ||
      upstream.cols() != trace.result().cols()) {
    throw std::invalid_argument("upstream gradient has wrong shape");
  }
  if (param_grad != nullptr && param_grad->size() != net.params().size()) {
    throw std::invalid_argument("parameter gradient buffer has wrong length");
  }
  const double* p = net.params().data();
  Matrix delta = upstream;
  for (std::size_t l = arch.weight_layers(); l-- > 0;) {
    int in = arch.layer_sizes[l];
    int out = arch.layer_sizes[l + 1];
    scale_by_derivative(arch.activations[l], trace.outputs[l + 1], delta);
    if (param_grad != nullptr) {
      double* g = param_grad->data() + net.layer_offset(l);
      Weights gw(g, out, in);
      Bias gb(g + static_cast<std::ptrdiff_t>(in) * out, out);
      gw.noalias() += delta * trace.outputs[l].transpose();
      gb += delta.rowwise().sum();
    }
    ConstWeights weights(p + net.layer_offset(l), out, in);
    delta = weights.transpose() * delta;
  }
  return delta;
}

std::vector<double> forward(const MlpNet& net, std::span<const double> input) {
  if (input.size() != static_cast<std::size_t>(net.arch().input_dim())) {
    throw std::invalid_argument("input dimension does not match network");
  }
  Matrix x = Eigen::Map<const Eigen::VectorXd>(input.data(),
                                               static_cast<Eigen::Index>(input.size()));
  Matrix y = forward_batch(net, x);
  return std::vector<double>(y.data(), y.data() + y.size());
}

Gradients backward(const MlpNet& net, std::span<const double> input,
                   std::span<const double> upstream) {
  if (input.size() != static_cast<std::size_t>(net.arch().input_dim()) ||
      upstream.size() != static_cast<std::size_t>(net.arch().output_dim())) {
    throw std::invalid_argument("input or upstream dimension does not match network");
  }
  Matrix x = Eigen::Map<const Eigen::VectorXd>(input.data(),
                                               static_cast<Eigen::Index>(input.size()));
  Matrix up = Eigen::Map<const Eigen::VectorXd>(
      upstream.data(), static_cast<Eigen::Index>(upstream.size()));
  ForwardTrace trace = forward_trace(net, x);
  Gradients g;
  g.params.assign(net.params().size(), 0.0);
  Matrix gin = backward_batch(net, trace, up, &g.params);
  g.input.assign(gin.data(), gin.data() + gin.size());
  return g;
}

std::string serialize(const MlpNet& net) {
  const Architecture& arch = net.arch();
  std::string out(kMagic, kMagic + 4);
  put_le<std::uint32_t>(out, kFormatVersion);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(arch.layer_sizes.size()));
  for (int s : arch.layer_sizes) put_le<std::uint32_t>(out, static_cast<std::uint32_t>(s));
  for (Activation a : arch.activations) put_le<std::uint8_t>(out, static_cast<std::uint8_t>(a));
  put_le<std::uint64_t>(out, net.params().size());
  for (double p : net.params()) put_le<double>(out, p);
  return out;
}

MlpNet deserialize(std::string_view bytes) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw std::runtime_error("corrupt net file: bad magic");
  }
  Reader r(bytes.substr(4));
  if (r.get<std::uint32_t>() != kFormatVersion) {
    throw std::runtime_error("corrupt net file: unsupported version");
  }
  auto num_sizes = r.get<std::uint32_t>();
  if (num_sizes < 2 || num_sizes > 1024) {
    throw std::runtime_error("corrupt net file: bad layer count");
  }
  Architecture arch;
  for (std::uint32_t i = 0; i < num_sizes; ++i) {
    auto s = r.get<std::uint32_t>();
    if (s == 0 || s > (1u << 20)) throw std::runtime_error("corrupt net file: bad layer size");
    arch.layer_sizes.push_back(static_cast<int>(s));
  }
  for (std::uint32_t i = 0; i + 1 < num_sizes; ++i) {
    auto tag = r.get<std::uint8_t>();
    if (tag > static_cast<std::uint8_t>(Activation::kLinear)) {
      throw std::runtime_error("corrupt net file: bad activation tag");
    }
    arch.activations.push_back(static_cast<Activation>(tag));
  }
  auto n = r.get<std::uint64_t>();
  if (n != param_count(arch)) {
    throw std::runtime_error("corrupt net file: parameter count mismatch");
  }
  std::vector<double> params(n);
  for (auto& p : params) p = r.get<double>();
  if (!r.done()) throw std::runtime_error("corrupt net file: trailing bytes");
  try {
    return MlpNet(std::move(arch), std::move(params));
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("corrupt net file: ") + e.what());
  }
}

void save_net(const std::filesystem::path& path, const MlpNet& net) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  std::string bytes = serialize(net);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

MlpNet load_net(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  return deserialize(bytes);
}

Optimizer::Optimizer(const OptimizerConfig& cfg, std::size_t n)
    : cfg_(cfg) {
  if (!(cfg_.learning_rate > 0.0)) {
    throw std::invalid_argument("learning rate must be positive");
  }
  if (cfg_.kind == OptimizerConfig::Kind::kAdam) {
    m_.assign(n, 0.0);
    v_.assign(n, 0.0);
  }
}

void Optimizer::ascend(std::span<double> params, std::span<const double> grad) {
  if (params.size() != grad.size()) {
    throw std::invalid_argument("gradient length does not match parameters");
  }
  ++step_;
  if (cfg_.kind == OptimizerConfig::Kind::kSgd) {
    for (std::size_t i = 0; i < params.size(); ++i) {
      params[i] += cfg_.learning_rate * grad[i];
    }
    return;
  }
  if (m_.size() != params.size()) {
    throw std::invalid_argument("optimizer sized for a different network");
  }
  const double c1 = 1.0 - std::pow(cfg_.beta1, static_cast<double>(step_));
  const double c2 = 1.0 - std::pow(cfg_.beta2, static_cast<double>(step_));
  for (std::size_t i = 0; i < params.size(); ++i) {
    m_[i] = cfg_.beta1 * m_[i] + (1.0 - cfg_.beta1) * grad[i];
    v_[i] = cfg_.beta2 * v_[i] + (1.0 - cfg_.beta2) * grad[i] * grad[i];
    params[i] += cfg_.learning_rate * (m_[i] / c1) / (std::sqrt(v_[i] / c2) + cfg_.epsilon);
  }
}

}  // namespace pnmgang
