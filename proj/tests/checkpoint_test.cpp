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

#include "checkpoint.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "config.hpp"

namespace aaeal {
namespace {

namespace fs = std::filesystem;

AaeModel trained_model() {
  TrainConfig cfg;
  cfg.arch.latent_dim = 3;
  cfg.arch.encoder_hidden = {12, 6};
  cfg.arch.discriminator_hidden = {5};
  cfg.arch.classifier_hidden = {4};
  cfg.epochs = 2;
  cfg.batch_size = 8;
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Tensor x(24, 10);
  for (double& v : x.values()) v = u(rng);
  Tensor y(24, 1);
  for (std::size_t i = 0; i < 24; ++i) y.at(i, 0) = x.at(i, 0) > 0.5 ? 1.0 : 0.0;
  return train_model(x, y, nullptr, cfg);
}

TEST(Checkpoint, FileRoundTripIsBitExact) {
  const ModelCheckpoint ckpt{trained_model(), 1234567890123ULL, 4};
  const fs::path file = fs::temp_directory_path() / "aaeal_ckpt_test.json";
  save_model(ckpt, file);
  const ModelCheckpoint back = load_model(file);
  EXPECT_TRUE(back.model == ckpt.model);
  EXPECT_EQ(back.rng_seed, ckpt.rng_seed);
  EXPECT_EQ(back.rounds_completed, 4u);
  const nlohmann::json doc = read_json_file(file);
  EXPECT_EQ(doc.at("format_version"), kCheckpointFormatVersion);
  EXPECT_EQ(doc.at("d_z"), 3);
}

TEST(Checkpoint, TruncatedFileIsFormatError) {
  const fs::path file = fs::temp_directory_path() / "aaeal_ckpt_trunc.json";
  save_model({trained_model(), 1, 0}, file);
  fs::resize_file(file, fs::file_size(file) / 2);
  try {
    load_model(file);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kFormat);
  }
}

TEST(Checkpoint, StructuralDamageIsFormatError) {
  nlohmann::json doc = model_to_json({trained_model(), 1, 0});
  doc["networks"]["decoder"][0]["weights"].erase(0);
  EXPECT_THROW(model_from_json(doc), Error);
  doc = model_to_json({trained_model(), 1, 0});
  doc["format_version"] = 99;
  EXPECT_THROW(model_from_json(doc), Error);
  doc = model_to_json({trained_model(), 1, 0});
  doc["d_z"] = 5;
  EXPECT_THROW(model_from_json(doc), Error);
}

TEST(Checkpoint, MissingFileIsIoError) {
  try {
    load_model("/nonexistent/model.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kIo);
  }
}

TEST(Settings, JsonRoundTripAndUnknownKeys) {
  RunSettings s;
  s.seed = 77;
  s.strategy = Strategy::kRandom;
  s.train.epochs = 3;
  s.train.arch.encoder_hidden = {32, 16};
  s.train.generator_adam.lr = 5e-4;
  s.oracle.votes_per_label = 1;
  s.scaling.pool_sizes = {100, 200};
  const RunSettings back = settings_from_json(to_json(s), RunSettings{});
  EXPECT_EQ(to_json(back), to_json(s));
  EXPECT_EQ(back.train.generator_adam.lr, 5e-4);
  EXPECT_EQ(back.strategy, Strategy::kRandom);
  try {
    settings_from_json(nlohmann::json{{"sed", 1}}, RunSettings{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kConfig);
  }
  EXPECT_THROW(settings_from_json(nlohmann::json{{"train", {{"batch_size", 1}}}}, RunSettings{}),
               Error);
}

TEST(Settings, PartialDocumentOverridesBase) {
  RunSettings base;
  base.seed = 5;
  const RunSettings s = settings_from_json(nlohmann::json{{"train", {{"epochs", 2}}}}, base);
  EXPECT_EQ(s.seed, 5u);
  EXPECT_EQ(s.train.epochs, 2u);
  EXPECT_EQ(s.train.batch_size, base.train.batch_size);
}

}  // namespace
}  // namespace aaeal
