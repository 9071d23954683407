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

#ifndef AAEAL_AAE_HPP_
#define AAEAL_AAE_HPP_

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "nn.hpp"
#include "tensor.hpp"

namespace aaeal {

// Hidden-layer sizes of the four networks. The encoder's hidden stack is
// mirrored for the decoder.
struct Architecture {
  std::size_t latent_dim = 8;
  std::vector<std::size_t> encoder_hidden = {256, 64};
  std::vector<std::size_t> discriminator_hidden = {64, 16};
  std::vector<std::size_t> classifier_hidden = {16};
};

struct TrainConfig {
  Architecture arch;
  std::size_t batch_size = 64;
  std::size_t epochs = 10;
  AdamConfig reconstruction_adam{1e-3, 0.9, 0.999, 1e-8};
  AdamConfig discriminator_adam{2e-4, 0.5, 0.999, 1e-8};
  AdamConfig generator_adam{2e-4, 0.5, 0.999, 1e-8};
  AdamConfig supervised_adam{1e-3, 0.9, 0.999, 1e-8};
  // Phase switches; turning off the first two gives the supervised-only
  // ablation.
  bool reconstruction_phase = true;
  bool adversarial_phase = true;
  // When false the supervised phase trains the classifier head on a frozen
  // encoder.
  bool supervised_updates_encoder = true;
  // Center each pixel and divide by the pooled pixel standard deviation before
  // the encoder, using statistics of the training images.
  bool standardize_inputs = false;
  std::uint64_t seed = 1;

  void validate() const;
};

struct AaeModel {
  Mlp encoder;        // pixels -> latent
  Mlp decoder;        // latent -> pixels, sigmoid output
  Mlp discriminator;  // latent -> P(sample came from the prior)
  Mlp classifier;     // latent -> P(class 1)
  std::size_t latent_dim = 0;
  // Affine map applied before the encoder: (x - mean) * scale. Identity
  // unless fitted. The decoder reconstructs raw pixels.
  std::vector<double> input_mean;
  std::vector<double> input_scale;

  // Fresh model; discriminator and classifier heads start at zero so their
  // untrained outputs are exactly 0.5.
  static AaeModel create(std::size_t input_dim, const Architecture& arch,
                         std::mt19937_64& rng);
  // Per-pixel means and one pooled scale from the given images (labeled rows
  // plus the optional unlabeled rows).
  void fit_input_statistics(const Tensor& labeled, const Tensor* unlabeled);
  // Checks the dimension chain between the four networks.
  void validate() const;
  std::size_t input_dim() const { return encoder.input_dim(); }

  friend bool operator==(const AaeModel& a, const AaeModel& b) {
    return a.latent_dim == b.latent_dim && a.encoder == b.encoder &&
           a.decoder == b.decoder && a.discriminator == b.discriminator &&
           a.classifier == b.classifier && a.input_mean == b.input_mean &&
           a.input_scale == b.input_scale;
  }
};

// One Adam state per training phase. The encoder is optimized by three
// phases, each with its own moments.
struct AaeOptimizers {
  AdamState reconstruction;  // encoder + decoder
  AdamState discriminator;   // discriminator
  AdamState generator;       // encoder
  AdamState supervised;      // classifier (+ encoder)

  static AaeOptimizers create(const AaeModel& model, const TrainConfig& cfg);
};

// n x latent_dim i.i.d. standard normal draws.
Tensor sample_prior(std::size_t n, std::size_t latent_dim, std::mt19937_64& rng);

// Each step returns the phase loss evaluated before its parameter update.
double reconstruction_step(AaeModel& model, const Tensor& batch,
                           AaeOptimizers& opt);
double discriminator_step(AaeModel& model, const Tensor& batch,
                          std::mt19937_64& rng, AaeOptimizers& opt);
double generator_step(AaeModel& model, const Tensor& batch, AaeOptimizers& opt);
double supervised_step(AaeModel& model, const Tensor& images,
                       const Tensor& labels, AaeOptimizers& opt,
                       bool update_encoder = true);
// update_encoder must agree with the TrainConfig the optimizers were built
// from; a mismatch is reported as a shape error by the Adam step.

struct EpochMetrics {
  double reconstruction = 0.0;
  double discriminator = 0.0;
  double generator = 0.0;
  double supervised = 0.0;
  std::size_t cycles = 0;
};

// One pass over labeled + unlabeled images for the unsupervised phases, with
// a supervised step on the (cycled) labeled set after every minibatch.
// labels is a column of 0/1 values, one per labeled row.
EpochMetrics train_epoch(AaeModel& model, const Tensor& labeled,
                         const Tensor& labels, const Tensor* unlabeled,
                         const TrainConfig& cfg, AaeOptimizers& opt,
                         std::mt19937_64& rng);

// Fresh model seeded from cfg.seed, trained for cfg.epochs.
AaeModel train_model(const Tensor& labeled, const Tensor& labels,
                     const Tensor* unlabeled, const TrainConfig& cfg,
                     std::vector<EpochMetrics>* history = nullptr);

// Classifier probability per image, clamped into (0, 1).
std::vector<double> predict_proba(const AaeModel& model, const Tensor& images);
Tensor encode(const AaeModel& model, const Tensor& images);
// Images after the model's input standardization.
Tensor standardize_input(const AaeModel& model, const Tensor& images);

}  // namespace aaeal

#endif  // AAEAL_AAE_HPP_
