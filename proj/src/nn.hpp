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

#ifndef AAEAL_NN_HPP_
#define AAEAL_NN_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "tensor.hpp"

namespace aaeal {

enum class Activation { kLinear, kRelu, kSigmoid };

const char* to_string(Activation a);
Activation activation_from_string(const std::string& name);

// y = act(x W^T + b) for a row-major batch x of shape n x fan_in.
struct DenseLayer {
  Tensor weights;  // fan_out x fan_in
  Tensor bias;     // fan_out
  Activation activation = Activation::kLinear;

  std::size_t fan_in() const { return weights.cols(); }
  std::size_t fan_out() const { return weights.rows(); }
};

// Parameter gradients in parameters() order (W0, b0, W1, b1, ...) plus the
// gradient with respect to the network input.
struct MlpGradients {
  std::vector<Tensor> params;
  Tensor input;
};

class Mlp {
 public:
  Mlp() = default;
  explicit Mlp(std::vector<DenseLayer> layers);

  // Glorot-uniform initialization for layer sizes dims[0] -> ... -> dims.back().
  // With zero_last_layer the final weights and bias start at zero.
  static Mlp create(std::span<const std::size_t> dims, Activation hidden,
                    Activation output, std::mt19937_64& rng,
                    bool zero_last_layer = false);

  // Caching forward pass; backward() consumes the cache.
  Tensor forward(const Tensor& batch);
  // Non-caching forward pass, safe for concurrent readers.
  Tensor infer(const Tensor& batch) const;
  MlpGradients backward(const Tensor& loss_grad) const;
  void clear_cache();
  bool has_cache() const { return !cache_.empty(); }

  std::vector<Tensor*> parameters();
  std::vector<const Tensor*> parameters() const;
  std::size_t parameter_count() const;

  std::size_t input_dim() const { return layers_.front().fan_in(); }
  std::size_t output_dim() const { return layers_.back().fan_out(); }
  const std::vector<DenseLayer>& layers() const { return layers_; }

  // Parameter equality, ignoring any cached activations.
  friend bool operator==(const Mlp& a, const Mlp& b);

 private:
  std::vector<DenseLayer> layers_;
  // cache_[0] is the batch; cache_[i + 1] is the activation of layer i.
  std::vector<Tensor> cache_;
};

struct LossResult {
  double value = 0.0;
  Tensor grad;  // d value / d prediction
};

inline constexpr double kBceClamp = 1e-7;

// Mean squared error over all elements.
LossResult mse_loss(const Tensor& pred, const Tensor& target);
// Mean binary cross-entropy with predictions clamped to [eps, 1 - eps]. The
// gradient is zero where the clamp is active.
LossResult bce_loss(const Tensor& p, const Tensor& y);

enum class LossKind { kMse, kBce };
LossResult compute_loss(LossKind kind, const Tensor& pred, const Tensor& target);

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

struct AdamState {
  AdamConfig config;
  std::vector<Tensor> m;
  std::vector<Tensor> v;
  std::int64_t t = 0;

  // Zeroed accumulators shaped like params.
  static AdamState zeros_like(std::span<const Tensor* const> params,
                              AdamConfig config);
};

void adam_step(std::span<Tensor* const> params,
               std::span<const Tensor> grads, AdamState& state);

// Max over all parameters of |analytic - numeric| / max(1e-8, |analytic| +
// |numeric|), numeric by central differences with step h. `tamper` may edit
// the analytic gradients before comparison (used for fault injection).
double gradient_check(
    const Mlp& net, LossKind loss, const Tensor& batch, const Tensor& target,
    double h,
    const std::function<void(std::vector<Tensor>&)>& tamper = nullptr);

}  // namespace aaeal

#endif  // AAEAL_NN_HPP_
