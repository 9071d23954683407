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

#include "config.hpp"

#include <initializer_list>
#include <string>

#include "checkpoint.hpp"
#include "error.hpp"

namespace aaeal {

namespace {

using nlohmann::json;

void allow_keys(const json& doc, const char* section,
                std::initializer_list<const char*> keys) {
  if (!doc.is_object()) {
    fail(ErrorKind::kConfig, std::string("config section '") + section +
                                 "' must be an object");
  }
  for (const auto& [key, value] : doc.items()) {
    bool known = false;
    for (const char* k : keys) known = known || key == k;
    if (!known) {
      fail(ErrorKind::kConfig, std::string("unknown config key '") + section +
                                   "." + key + "'");
    }
  }
}

template <typename T>
void read(const json& doc, const char* key, T& out) {
  if (doc.contains(key)) out = doc.at(key).get<T>();
}

json adam_json(const AdamConfig& a) {
  return {{"lr", a.lr}, {"beta1", a.beta1}, {"beta2", a.beta2},
          {"epsilon", a.epsilon}};
}

void read_adam(const json& doc, const char* key, AdamConfig& a) {
  if (!doc.contains(key)) return;
  const json& d = doc.at(key);
  allow_keys(d, key, {"lr", "beta1", "beta2", "epsilon"});
  read(d, "lr", a.lr);
  read(d, "beta1", a.beta1);
  read(d, "beta2", a.beta2);
  read(d, "epsilon", a.epsilon);
}

}  // namespace

json to_json(const TrainConfig& c) {
  return {{"batch_size", c.batch_size},
          {"epochs", c.epochs},
          {"latent_dim", c.arch.latent_dim},
          {"encoder_hidden", c.arch.encoder_hidden},
          {"discriminator_hidden", c.arch.discriminator_hidden},
          {"classifier_hidden", c.arch.classifier_hidden},
          {"reconstruction_adam", adam_json(c.reconstruction_adam)},
          {"discriminator_adam", adam_json(c.discriminator_adam)},
          {"generator_adam", adam_json(c.generator_adam)},
          {"supervised_adam", adam_json(c.supervised_adam)},
          {"reconstruction_phase", c.reconstruction_phase},
          {"adversarial_phase", c.adversarial_phase},
          {"supervised_updates_encoder", c.supervised_updates_encoder},
          {"standardize_inputs", c.standardize_inputs},
          {"seed", c.seed}};
}

TrainConfig train_config_from_json(const json& doc, TrainConfig c) {
  try {
    allow_keys(doc, "train",
               {"batch_size", "epochs", "latent_dim", "encoder_hidden",
                "discriminator_hidden", "classifier_hidden",
                "reconstruction_adam", "discriminator_adam", "generator_adam",
                "supervised_adam", "reconstruction_phase", "adversarial_phase",
                "supervised_updates_encoder", "standardize_inputs", "seed"});
    read(doc, "batch_size", c.batch_size);
    read(doc, "epochs", c.epochs);
    read(doc, "latent_dim", c.arch.latent_dim);
    read(doc, "encoder_hidden", c.arch.encoder_hidden);
    read(doc, "discriminator_hidden", c.arch.discriminator_hidden);
    read(doc, "classifier_hidden", c.arch.classifier_hidden);
    read_adam(doc, "reconstruction_adam", c.reconstruction_adam);
    read_adam(doc, "discriminator_adam", c.discriminator_adam);
    read_adam(doc, "generator_adam", c.generator_adam);
    read_adam(doc, "supervised_adam", c.supervised_adam);
    read(doc, "reconstruction_phase", c.reconstruction_phase);
    read(doc, "adversarial_phase", c.adversarial_phase);
    read(doc, "supervised_updates_encoder", c.supervised_updates_encoder);
    read(doc, "standardize_inputs", c.standardize_inputs);
    read(doc, "seed", c.seed);
  } catch (const json::exception& e) {
    fail(ErrorKind::kConfig, std::string("train config: ") + e.what());
  }
  c.validate();
  return c;
}

json to_json(const RunSettings& s) {
  return {{"seed", s.seed},
          {"strategy", to_string(s.strategy)},
          {"train", to_json(s.train)},
          {"schedule",
           {{"seed_frac", s.schedule.seed_frac},
            {"step_frac", s.schedule.step_frac},
            {"cap_frac", s.schedule.cap_frac}}},
          {"oracle",
           {{"votes_per_label", s.oracle.votes_per_label},
            {"mode", s.oracle.mode == OracleMode::kDataset ? "dataset" : "human"}}},
          {"split",
           {{"train", s.split.train},
            {"val", s.split.val},
            {"test", s.split.test},
            {"seed", s.split.seed}}},
          {"scaling",
           {{"budgets", s.scaling.budgets},
            {"pool_sizes", s.scaling.pool_sizes},
            {"seeds", s.scaling.seeds},
            {"threads", s.scaling.threads}}},
          {"checkpoint", s.checkpoint_path}};
}

RunSettings settings_from_json(const json& doc, RunSettings s) {
  try {
    allow_keys(doc, "config", {"seed", "strategy", "train", "schedule", "oracle",
                               "split", "scaling", "checkpoint"});
    read(doc, "seed", s.seed);
    if (doc.contains("strategy")) {
      s.strategy = strategy_from_string(doc.at("strategy").get<std::string>());
    }
    if (doc.contains("train")) s.train = train_config_from_json(doc.at("train"), s.train);
    if (doc.contains("schedule")) {
      const json& d = doc.at("schedule");
      allow_keys(d, "schedule", {"seed_frac", "step_frac", "cap_frac"});
      read(d, "seed_frac", s.schedule.seed_frac);
      read(d, "step_frac", s.schedule.step_frac);
      read(d, "cap_frac", s.schedule.cap_frac);
    }
    if (doc.contains("oracle")) {
      const json& d = doc.at("oracle");
      allow_keys(d, "oracle", {"votes_per_label", "mode"});
      read(d, "votes_per_label", s.oracle.votes_per_label);
      if (d.contains("mode")) {
        const std::string mode = d.at("mode").get<std::string>();
        if (mode == "dataset") {
          s.oracle.mode = OracleMode::kDataset;
        } else if (mode == "human") {
          s.oracle.mode = OracleMode::kHuman;
        } else {
          fail(ErrorKind::kConfig, "oracle.mode must be 'dataset' or 'human'");
        }
      }
      if (s.oracle.votes_per_label < 1) {
        fail(ErrorKind::kConfig, "oracle.votes_per_label must be positive");
      }
    }
    if (doc.contains("split")) {
      const json& d = doc.at("split");
      allow_keys(d, "split", {"train", "val", "test", "seed"});
      read(d, "train", s.split.train);
      read(d, "val", s.split.val);
      read(d, "test", s.split.test);
      read(d, "seed", s.split.seed);
    }
    if (doc.contains("scaling")) {
      const json& d = doc.at("scaling");
      allow_keys(d, "scaling", {"budgets", "pool_sizes", "seeds", "threads"});
      read(d, "budgets", s.scaling.budgets);
      read(d, "pool_sizes", s.scaling.pool_sizes);
      read(d, "seeds", s.scaling.seeds);
      read(d, "threads", s.scaling.threads);
    }
    read(doc, "checkpoint", s.checkpoint_path);
  } catch (const json::exception& e) {
    fail(ErrorKind::kConfig, std::string("config: ") + e.what());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kConfig) throw;
    fail(ErrorKind::kConfig, e.what());
  }
  return s;
}

RunSettings load_settings(const std::filesystem::path& path) {
  return settings_from_json(read_json_file(path));
}

}  // namespace aaeal
