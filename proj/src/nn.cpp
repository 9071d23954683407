// Copyright 2026 The aaeal Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nn.hpp"

#include <Eigen/Core>
#include <algorithm>
#include <cmath>

#include "error.hpp"

namespace aaeal {

namespace {

using RowMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MatMap = Eigen::Map<RowMatrix>;
using ConstMatMap = Eigen::Map<const RowMatrix>;
using ConstRowVecMap = Eigen::Map<const Eigen::RowVectorXd>;

MatMap as_matrix(Tensor& t) {
  return MatMap(t.data(), static_cast<Eigen::Index>(t.rows()),
                static_cast<Eigen::Index>(t.cols()));
}
ConstMatMap as_matrix(const Tensor& t) {
  return ConstMatMap(t.data(), static_cast<Eigen::Index>(t.rows()),
                     static_cast<Eigen::Index>(t.cols()));
}

double sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

Tensor layer_forward(const DenseLayer& layer, const Tensor& x) {
  if (x.cols() != layer.fan_in()) {
    fail(ErrorKind::kShape, "layer expects " + std::to_string(layer.fan_in()) +
                                " inputs, batch has " + std::to_string(x.cols()));
  }
  Tensor out(x.rows(), layer.fan_out());
  auto z = as_matrix(out);
  z.noalias() = as_matrix(x) * as_matrix(layer.weights).transpose();
  z.rowwise() += ConstRowVecMap(layer.bias.data(),
                                static_cast<Eigen::Index>(layer.fan_out()));
  switch (layer.activation) {
    case Activation::kLinear:
      break;
    case Activation::kRelu:
      for (double& v : out.values()) v = v > 0.0 ? v : 0.0;
      break;
    case Activation::kSigmoid:
      for (double& v : out.values()) v = sigmoid(v);
      break;
  }
  return out;
}

}  // namespace

const char* to_string(Activation a) {
  switch (a) {
    case Activation::kLinear: return "linear";
    case Activation::kRelu: return "relu";
    case Activation::kSigmoid: return "sigmoid";
  }
  return "linear";
}

Activation activation_from_string(const std::string& name) {
  if (name == "linear") return Activation::kLinear;
  if (name == "relu") return Activation::kRelu;
  if (name == "sigmoid") return Activation::kSigmoid;
  fail(ErrorKind::kFormat, "unknown activation '" + name + "'");
}

Mlp::Mlp(std::vector<DenseLayer> layers) : layers_(std::move(layers)) {
  if (layers_.empty()) fail(ErrorKind::kShape, "an MLP needs at least one layer");
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    const DenseLayer& l = layers_[i];
    if (l.weights.rank() != 2 || l.bias.rank() != 1 ||
        l.bias.size() != l.fan_out()) {
      fail(ErrorKind::kShape, "layer " + std::to_string(i) +
                                  ": weights and bias dimensions disagree");
    }
    if (i > 0 && layers_[i - 1].fan_out() != l.fan_in()) {
      fail(ErrorKind::kShape, "layer " + std::to_string(i) + " expects " +
                                  std::to_string(l.fan_in()) +
                                  " inputs but previous layer emits " +
                                  std::to_string(layers_[i - 1].fan_out()));
    }
  }
}

Mlp Mlp::create(std::span<const std::size_t> dims, Activation hidden,
                Activation output, std::mt19937_64& rng,
                bool zero_last_layer) {
  if (dims.size() < 2) fail(ErrorKind::kShape, "an MLP needs at least two sizes");
  std::vector<DenseLayer> layers;
  for (std::size_t i = 0; i + 1 < dims.size(); ++i) {
    const std::size_t fan_in = dims[i];
    const std::size_t fan_out = dims[i + 1];
    DenseLayer layer{Tensor(fan_out, fan_in),
                     Tensor(std::vector<std::size_t>{fan_out}),
                     i + 2 == dims.size() ? output : hidden};
    const bool last = i + 2 == dims.size();
    if (!(last && zero_last_layer)) {
      const double limit =
          std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
      std::uniform_real_distribution<double> dist(-limit, limit);
      for (double& w : layer.weights.values()) w = dist(rng);
    }
    layers.push_back(std::move(layer));
  }
  return Mlp(std::move(layers));
}

Tensor Mlp::forward(const Tensor& batch) {
  cache_.clear();
  cache_.reserve(layers_.size() + 1);
  cache_.push_back(batch);
  for (const DenseLayer& layer : layers_) {
    cache_.push_back(layer_forward(layer, cache_.back()));
  }
  require_finite(cache_.back(), "forward");
  return cache_.back();
}

Tensor Mlp::infer(const Tensor& batch) const {
  Tensor x = layer_forward(layers_.front(), batch);
  for (std::size_t i = 1; i < layers_.size(); ++i) {
    x = layer_forward(layers_[i], x);
  }
  require_finite(x, "forward");
  return x;
}

void Mlp::clear_cache() { cache_.clear(); }

MlpGradients Mlp::backward(const Tensor& loss_grad) const {
  if (cache_.empty()) {
    fail(ErrorKind::kState, "backward called without a cached forward pass");
  }
  require_same_shape(loss_grad, cache_.back(), "backward upstream gradient");

  MlpGradients grads;
  grads.params.resize(2 * layers_.size());
  Tensor delta = loss_grad;
  for (std::size_t li = layers_.size(); li-- > 0;) {
    const DenseLayer& layer = layers_[li];
    const Tensor& out = cache_[li + 1];
    const Tensor& in = cache_[li];
    switch (layer.activation) {
      case Activation::kLinear:
        break;
      case Activation::kRelu:
        for (std::size_t i = 0; i < delta.size(); ++i) {
          if (!(out[i] > 0.0)) delta[i] = 0.0;
        }
        break;
      case Activation::kSigmoid:
        for (std::size_t i = 0; i < delta.size(); ++i) {
          delta[i] *= out[i] * (1.0 - out[i]);
        }
        break;
    }
    Tensor dw(layer.fan_out(), layer.fan_in());
    as_matrix(dw).noalias() = as_matrix(delta).transpose() * as_matrix(in);
    Tensor db(std::vector<std::size_t>{layer.fan_out()});
    Eigen::Map<Eigen::RowVectorXd>(db.data(),
                                   static_cast<Eigen::Index>(layer.fan_out())) =
        as_matrix(delta).colwise().sum();
    Tensor dx(in.rows(), in.cols());
    as_matrix(dx).noalias() = as_matrix(delta) * as_matrix(layer.weights);
    grads.params[2 * li] = std::move(dw);
    grads.params[2 * li + 1] = std::move(db);
    delta = std::move(dx);
  }
  grads.input = std::move(delta);
  return grads;
}

std::vector<Tensor*> Mlp::parameters() {
  std::vector<Tensor*> out;
  for (DenseLayer& l : layers_) {
    out.push_back(&l.weights);
    out.push_back(&l.bias);
  }
  return out;
}

std::vector<const Tensor*> Mlp::parameters() const {
  std::vector<const Tensor*> out;
  for (const DenseLayer& l : layers_) {
    out.push_back(&l.weights);
    out.push_back(&l.bias);
  }
  return out;
}

std::size_t Mlp::parameter_count() const {
  std::size_t n = 0;
  for (const DenseLayer& l : layers_) n += l.weights.size() + l.bias.size();
  return n;
}

bool operator==(const Mlp& a, const Mlp& b) {
  if (a.layers_.size() != b.layers_.size()) return false;
  for (std::size_t i = 0; i < a.layers_.size(); ++i) {
    const DenseLayer& x = a.layers_[i];
    const DenseLayer& y = b.layers_[i];
    if (x.activation != y.activation || !(x.weights == y.weights) ||
        !(x.bias == y.bias)) {
      return false;
    }
  }
  return true;
}

LossResult mse_loss(const Tensor& pred, const Tensor& target) {
  require_same_shape(pred, target, "mse_loss");
  const double n = static_cast<double>(pred.size());
  LossResult r{0.0, Tensor(pred.shape())};
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const double d = pred[i] - target[i];
    r.value += d * d;
    r.grad[i] = 2.0 * d / n;
  }
  r.value /= n;
  return r;
}

LossResult bce_loss(const Tensor& p, const Tensor& y) {
  require_same_shape(p, y, "bce_loss");
  const double n = static_cast<double>(p.size());
  LossResult r{0.0, Tensor(p.shape())};
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double raw = p[i];
    const double q = std::clamp(raw, kBceClamp, 1.0 - kBceClamp);
    r.value -= y[i] * std::log(q) + (1.0 - y[i]) * std::log(1.0 - q);
    const bool clamped = raw < kBceClamp || raw > 1.0 - kBceClamp;
    r.grad[i] = clamped ? 0.0 : (q - y[i]) / (q * (1.0 - q)) / n;
  }
  r.value /= n;
  return r;
}

LossResult compute_loss(LossKind kind, const Tensor& pred,
                        const Tensor& target) {
  return kind == LossKind::kMse ? mse_loss(pred, target)
                                : bce_loss(pred, target);
}

AdamState AdamState::zeros_like(std::span<const Tensor* const> params,
                                AdamConfig config) {
  AdamState s;
  s.config = config;
  for (const Tensor* p : params) {
    s.m.emplace_back(p->shape());
    s.v.emplace_back(p->shape());
  }
  return s;
}

void adam_step(std::span<Tensor* const> params, std::span<const Tensor> grads,
               AdamState& state) {
  if (params.size() != grads.size() || params.size() != state.m.size()) {
    fail(ErrorKind::kShape, "adam_step: parameter, gradient and state counts differ");
  }
  for (std::size_t k = 0; k < params.size(); ++k) {
    require_same_shape(*params[k], grads[k], "adam_step gradient");
    require_same_shape(*params[k], state.m[k], "adam_step state");
  }
  const AdamConfig& c = state.config;
  state.t += 1;
  const double t = static_cast<double>(state.t);
  const double correct1 = 1.0 - std::pow(c.beta1, t);
  const double correct2 = 1.0 - std::pow(c.beta2, t);
  for (std::size_t k = 0; k < params.size(); ++k) {
    Tensor& p = *params[k];
    const Tensor& g = grads[k];
    Tensor& m = state.m[k];
    Tensor& v = state.v[k];
    for (std::size_t i = 0; i < p.size(); ++i) {
      m[i] = c.beta1 * m[i] + (1.0 - c.beta1) * g[i];
      v[i] = c.beta2 * v[i] + (1.0 - c.beta2) * g[i] * g[i];
      const double m_hat = m[i] / correct1;
      const double v_hat = v[i] / correct2;
      p[i] -= c.lr * m_hat / (std::sqrt(v_hat) + c.epsilon);
    }
  }
}

double gradient_check(
    const Mlp& net, LossKind loss, const Tensor& batch, const Tensor& target,
    double h, const std::function<void(std::vector<Tensor>&)>& tamper) {
  if (!(h > 0.0)) fail(ErrorKind::kInput, "gradient_check step must be positive");
  Mlp work = net;
  const Tensor pred = work.forward(batch);
  MlpGradients analytic = work.backward(compute_loss(loss, pred, target).grad);
  if (tamper) tamper(analytic.params);
  work.clear_cache();

  double worst = 0.0;
  std::vector<Tensor*> params = work.parameters();
  for (std::size_t k = 0; k < params.size(); ++k) {
    Tensor& p = *params[k];
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double saved = p[i];
      p[i] = saved + h;
      const double plus = compute_loss(loss, work.infer(batch), target).value;
      p[i] = saved - h;
      const double minus = compute_loss(loss, work.infer(batch), target).value;
      p[i] = saved;
      const double numeric = (plus - minus) / (2.0 * h);
      const double a = analytic.params[k][i];
      const double rel = std::abs(a - numeric) /
                         std::max(1e-8, std::abs(a) + std::abs(numeric));
      worst = std::max(worst, rel);
    }
  }
  return worst;
}

}  // namespace aaeal
