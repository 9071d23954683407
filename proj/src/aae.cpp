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

#include "aae.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "error.hpp"

namespace aaeal {

namespace {

// Floor on the pixel spread used for input standardization.
constexpr double kMinInputStd = 1e-2;

std::vector<std::size_t> chain(std::size_t in,
                               const std::vector<std::size_t>& hidden,
                               std::size_t out) {
  std::vector<std::size_t> dims{in};
  dims.insert(dims.end(), hidden.begin(), hidden.end());
  dims.push_back(out);
  return dims;
}

void require_batch(const Tensor& batch, const char* what) {
  if (batch.empty() || batch.rows() == 0) {
    fail(ErrorKind::kInput, std::string(what) + ": empty batch");
  }
}

template <typename T>
void append(std::vector<T>& dst, std::vector<T>&& src) {
  dst.insert(dst.end(), std::make_move_iterator(src.begin()),
             std::make_move_iterator(src.end()));
}

std::vector<const Tensor*> const_params(std::initializer_list<const Mlp*> nets) {
  std::vector<const Tensor*> out;
  for (const Mlp* n : nets) append(out, n->parameters());
  return out;
}

}  // namespace

void TrainConfig::validate() const {
  if (batch_size < 2) fail(ErrorKind::kConfig, "batch size must be at least 2");
  if (epochs < 1) fail(ErrorKind::kConfig, "epochs must be at least 1");
  if (arch.latent_dim < 1) fail(ErrorKind::kConfig, "latent dimension must be positive");
  for (const auto* hidden : {&arch.encoder_hidden, &arch.discriminator_hidden,
                             &arch.classifier_hidden}) {
    for (std::size_t h : *hidden) {
      if (h == 0) fail(ErrorKind::kConfig, "hidden layer sizes must be positive");
    }
  }
  for (const AdamConfig* a : {&reconstruction_adam, &discriminator_adam,
                              &generator_adam, &supervised_adam}) {
    if (!(a->lr > 0) || !(a->beta1 >= 0 && a->beta1 < 1) ||
        !(a->beta2 >= 0 && a->beta2 < 1) || !(a->epsilon > 0)) {
      fail(ErrorKind::kConfig, "invalid Adam hyperparameters");
    }
  }
}

AaeModel AaeModel::create(std::size_t input_dim, const Architecture& arch,
                          std::mt19937_64& rng) {
  if (input_dim == 0) fail(ErrorKind::kInput, "input dimension must be positive");
  AaeModel m;
  m.latent_dim = arch.latent_dim;
  const auto enc = chain(input_dim, arch.encoder_hidden, arch.latent_dim);
  std::vector<std::size_t> mirrored(arch.encoder_hidden.rbegin(),
                                    arch.encoder_hidden.rend());
  const auto dec = chain(arch.latent_dim, mirrored, input_dim);
  const auto disc = chain(arch.latent_dim, arch.discriminator_hidden, 1);
  const auto clf = chain(arch.latent_dim, arch.classifier_hidden, 1);
  m.encoder = Mlp::create(enc, Activation::kRelu, Activation::kLinear, rng);
  m.decoder = Mlp::create(dec, Activation::kRelu, Activation::kSigmoid, rng);
  m.discriminator = Mlp::create(disc, Activation::kRelu, Activation::kSigmoid,
                                rng, /*zero_last_layer=*/true);
  m.classifier = Mlp::create(clf, Activation::kRelu, Activation::kSigmoid, rng,
                             /*zero_last_layer=*/true);
  m.input_mean.assign(input_dim, 0.0);
  m.input_scale.assign(input_dim, 1.0);
  return m;
}

void AaeModel::fit_input_statistics(const Tensor& labeled, const Tensor* unlabeled) {
  const std::size_t d = input_dim();
  std::vector<const Tensor*> parts{&labeled};
  if (unlabeled != nullptr && !unlabeled->empty()) parts.push_back(unlabeled);
  std::vector<double> sum(d, 0.0);
  std::size_t n = 0;
  for (const Tensor* t : parts) {
    if (t->cols() != d) fail(ErrorKind::kShape, "input statistics: width mismatch");
    for (std::size_t r = 0; r < t->rows(); ++r) {
      for (std::size_t c = 0; c < d; ++c) sum[c] += t->at(r, c);
    }
    n += t->rows();
  }
  if (n == 0) fail(ErrorKind::kInput, "input statistics need at least one image");
  for (std::size_t c = 0; c < d; ++c) input_mean[c] = sum[c] / static_cast<double>(n);
  std::vector<double> sq(d, 0.0);
  for (const Tensor* t : parts) {
    for (std::size_t r = 0; r < t->rows(); ++r) {
      for (std::size_t c = 0; c < d; ++c) {
        const double e = t->at(r, c) - input_mean[c];
        sq[c] += e * e;
      }
    }
  }
  double total = 0.0;
  for (double v : sq) total += v;
  const double sd = std::sqrt(total / static_cast<double>(n * d));
  input_scale.assign(d, 1.0 / std::max(sd, kMinInputStd));
}

void AaeModel::validate() const {
  const std::size_t d = latent_dim;
  if (d == 0 || encoder.layers().empty() || decoder.layers().empty() ||
      discriminator.layers().empty() || classifier.layers().empty()) {
    fail(ErrorKind::kShape, "incomplete model");
  }
  if (encoder.output_dim() != d || decoder.input_dim() != d ||
      discriminator.input_dim() != d || classifier.input_dim() != d) {
    fail(ErrorKind::kShape, "latent dimension disagrees between networks");
  }
  if (decoder.output_dim() != encoder.input_dim()) {
    fail(ErrorKind::kShape, "decoder output does not match encoder input");
  }
  if (discriminator.output_dim() != 1 || classifier.output_dim() != 1) {
    fail(ErrorKind::kShape, "discriminator and classifier must emit one value");
  }
  if (input_mean.size() != encoder.input_dim() ||
      input_scale.size() != encoder.input_dim()) {
    fail(ErrorKind::kShape, "input statistics do not match the encoder input");
  }
}

AaeOptimizers AaeOptimizers::create(const AaeModel& m, const TrainConfig& cfg) {
  AaeOptimizers o;
  o.reconstruction = AdamState::zeros_like(
      const_params({&m.encoder, &m.decoder}), cfg.reconstruction_adam);
  o.discriminator = AdamState::zeros_like(const_params({&m.discriminator}),
                                          cfg.discriminator_adam);
  o.generator =
      AdamState::zeros_like(const_params({&m.encoder}), cfg.generator_adam);
  o.supervised = AdamState::zeros_like(
      cfg.supervised_updates_encoder ? const_params({&m.classifier, &m.encoder})
                                     : const_params({&m.classifier}),
      cfg.supervised_adam);
  return o;
}

Tensor sample_prior(std::size_t n, std::size_t latent_dim,
                    std::mt19937_64& rng) {
  if (n == 0) fail(ErrorKind::kInput, "sample_prior needs n >= 1");
  Tensor z(n, latent_dim);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (double& v : z.values()) v = normal(rng);
  return z;
}

double reconstruction_step(AaeModel& model, const Tensor& batch,
                           AaeOptimizers& opt) {
  require_batch(batch, "reconstruction_step");
  const Tensor z = model.encoder.forward(standardize_input(model, batch));
  const Tensor recon = model.decoder.forward(z);
  const LossResult loss = mse_loss(recon, batch);
  MlpGradients dec = model.decoder.backward(loss.grad);
  MlpGradients enc = model.encoder.backward(dec.input);

  std::vector<Tensor*> params = model.encoder.parameters();
  append(params, model.decoder.parameters());
  std::vector<Tensor> grads = std::move(enc.params);
  append(grads, std::move(dec.params));
  adam_step(params, grads, opt.reconstruction);
  model.encoder.clear_cache();
  model.decoder.clear_cache();
  return loss.value;
}

double discriminator_step(AaeModel& model, const Tensor& batch,
                          std::mt19937_64& rng, AaeOptimizers& opt) {
  require_batch(batch, "discriminator_step");
  const std::size_t n = batch.rows();
  const Tensor real = sample_prior(n, model.latent_dim, rng);
  const Tensor fake = encode(model, batch);
  const Tensor d = model.discriminator.forward(Tensor::vstack(real, fake));
  Tensor target(2 * n, 1);
  for (std::size_t i = 0; i < n; ++i) target[i] = 1.0;
  // Mean over prior samples plus mean over encoded samples.
  LossResult loss = bce_loss(d, target);
  loss.value *= 2.0;
  for (double& g : loss.grad.values()) g *= 2.0;
  MlpGradients g = model.discriminator.backward(loss.grad);
  adam_step(model.discriminator.parameters(), g.params, opt.discriminator);
  model.discriminator.clear_cache();
  return loss.value;
}

double generator_step(AaeModel& model, const Tensor& batch,
                      AaeOptimizers& opt) {
  require_batch(batch, "generator_step");
  const Tensor z = model.encoder.forward(standardize_input(model, batch));
  // Work on a copy so the discriminator's cache is never touched.
  Mlp critic = model.discriminator;
  const Tensor d = critic.forward(z);
  const LossResult loss = bce_loss(d, Tensor(d.rows(), 1, 1.0));
  MlpGradients through = critic.backward(loss.grad);
  MlpGradients enc = model.encoder.backward(through.input);
  adam_step(model.encoder.parameters(), enc.params, opt.generator);
  model.encoder.clear_cache();
  return loss.value;
}

double supervised_step(AaeModel& model, const Tensor& images,
                       const Tensor& labels, AaeOptimizers& opt,
                       bool update_encoder) {
  require_batch(images, "supervised_step");
  if (labels.size() != images.rows()) {
    fail(ErrorKind::kShape, "supervised_step: one label per image required");
  }
  for (double y : labels.values()) {
    if (y != 0.0 && y != 1.0) fail(ErrorKind::kInput, "labels must be 0 or 1");
  }
  const Tensor z = model.encoder.forward(standardize_input(model, images));
  const Tensor p = model.classifier.forward(z);
  const Tensor target = Tensor::from(
      p.rows(), 1,
      std::vector<double>(labels.values().begin(), labels.values().end()));
  const LossResult loss = bce_loss(p, target);
  MlpGradients clf = model.classifier.backward(loss.grad);

  std::vector<Tensor*> params = model.classifier.parameters();
  std::vector<Tensor> grads = std::move(clf.params);
  if (update_encoder) {
    MlpGradients enc = model.encoder.backward(clf.input);
    append(params, model.encoder.parameters());
    append(grads, std::move(enc.params));
  }
  adam_step(params, grads, opt.supervised);
  model.encoder.clear_cache();
  model.classifier.clear_cache();
  return loss.value;
}

EpochMetrics train_epoch(AaeModel& model, const Tensor& labeled,
                         const Tensor& labels, const Tensor* unlabeled,
                         const TrainConfig& cfg, AaeOptimizers& opt,
                         std::mt19937_64& rng) {
  if (labeled.empty() || labeled.rows() == 0) {
    fail(ErrorKind::kInput, "train_epoch: labeled set is empty");
  }
  if (labels.size() != labeled.rows()) {
    fail(ErrorKind::kShape, "train_epoch: one label per labeled image required");
  }
  const std::size_t n_lab = labeled.rows();
  const std::size_t n_unl =
      unlabeled != nullptr && !unlabeled->empty() ? unlabeled->rows() : 0;
  if (n_unl > 0 && unlabeled->cols() != labeled.cols()) {
    fail(ErrorKind::kShape, "train_epoch: labeled and unlabeled widths differ");
  }

  // Index space: [0, n_lab) labeled rows, [n_lab, n_lab + n_unl) unlabeled.
  std::vector<std::size_t> order(n_lab + n_unl);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::size_t> lab_order(n_lab);
  std::iota(lab_order.begin(), lab_order.end(), std::size_t{0});
  std::shuffle(lab_order.begin(), lab_order.end(), rng);
  std::size_t lab_cursor = 0;

  const std::size_t width = labeled.cols();
  auto gather_union = [&](std::size_t begin, std::size_t count) {
    Tensor out(count, width);
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t idx = order[begin + i];
      const double* src = idx < n_lab ? labeled.data() + idx * width
                                      : unlabeled->data() + (idx - n_lab) * width;
      std::copy_n(src, width, out.data() + i * width);
    }
    return out;
  };

  EpochMetrics m;
  const bool unsupervised = cfg.reconstruction_phase || cfg.adversarial_phase;
  for (std::size_t begin = 0; begin < order.size(); begin += cfg.batch_size) {
    const std::size_t count = std::min(cfg.batch_size, order.size() - begin);
    if (unsupervised) {
      const Tensor batch = gather_union(begin, count);
      if (cfg.reconstruction_phase) {
        m.reconstruction += reconstruction_step(model, batch, opt);
      }
      if (cfg.adversarial_phase) {
        m.discriminator += discriminator_step(model, batch, rng, opt);
        m.generator += generator_step(model, batch, opt);
      }
    }

    const std::size_t lab_count = std::min(cfg.batch_size, n_lab);
    std::vector<std::size_t> pick(lab_count);
    for (std::size_t i = 0; i < lab_count; ++i) {
      if (lab_cursor == n_lab) {
        std::shuffle(lab_order.begin(), lab_order.end(), rng);
        lab_cursor = 0;
      }
      pick[i] = lab_order[lab_cursor++];
    }
    m.supervised += supervised_step(model, labeled.gather_rows(pick),
                                    labels.gather_rows(pick), opt,
                                    cfg.supervised_updates_encoder);
    ++m.cycles;
  }
  const double c = static_cast<double>(m.cycles);
  m.reconstruction /= c;
  m.discriminator /= c;
  m.generator /= c;
  m.supervised /= c;
  return m;
}

AaeModel train_model(const Tensor& labeled, const Tensor& labels,
                     const Tensor* unlabeled, const TrainConfig& cfg,
                     std::vector<EpochMetrics>* history) {
  cfg.validate();
  if (labeled.empty()) fail(ErrorKind::kInput, "train_model: labeled set is empty");
  std::mt19937_64 rng(cfg.seed);
  AaeModel model = AaeModel::create(labeled.cols(), cfg.arch, rng);
  if (cfg.standardize_inputs) model.fit_input_statistics(labeled, unlabeled);
  AaeOptimizers opt = AaeOptimizers::create(model, cfg);
  for (std::size_t e = 0; e < cfg.epochs; ++e) {
    EpochMetrics m = train_epoch(model, labeled, labels, unlabeled, cfg, opt, rng);
    if (history != nullptr) history->push_back(m);
  }
  return model;
}

Tensor standardize_input(const AaeModel& model, const Tensor& images) {
  const std::size_t d = model.input_mean.size();
  if (images.cols() != d) {
    fail(ErrorKind::kShape, "images have " + std::to_string(images.cols()) +
                                " pixels, model expects " + std::to_string(d));
  }
  Tensor out = images;
  for (std::size_t r = 0; r < out.rows(); ++r) {
    double* row = out.data() + r * d;
    for (std::size_t c = 0; c < d; ++c) {
      row[c] = (row[c] - model.input_mean[c]) * model.input_scale[c];
    }
  }
  return out;
}

Tensor encode(const AaeModel& model, const Tensor& images) {
  return model.encoder.infer(standardize_input(model, images));
}

std::vector<double> predict_proba(const AaeModel& model, const Tensor& images) {
  if (images.cols() != model.input_dim()) {
    fail(ErrorKind::kShape, "predict_proba: images have " +
                                std::to_string(images.cols()) +
                                " pixels, model expects " +
                                std::to_string(model.input_dim()));
  }
  constexpr std::size_t kChunk = 1024;
  std::vector<double> out;
  out.reserve(images.rows());
  for (std::size_t begin = 0; begin < images.rows(); begin += kChunk) {
    const std::size_t count = std::min(kChunk, images.rows() - begin);
    const Tensor p =
        model.classifier.infer(encode(model, images.slice_rows(begin, count)));
    for (double v : p.values()) {
      out.push_back(std::clamp(v, kBceClamp, 1.0 - kBceClamp));
    }
  }
  return out;
}

}  // namespace aaeal
