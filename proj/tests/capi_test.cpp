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

// Exercises the shared library strictly through the public C header.

#include "aaeal/aaeal.h"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

const char* kTinyConfig = R"({
  "train": {"epochs": 1, "batch_size": 16, "latent_dim": 2,
            "encoder_hidden": [8], "discriminator_hidden": [4],
            "classifier_hidden": [4]},
  "scaling": {"budgets": [4, 8], "pool_sizes": [40, 80], "seeds": [1, 2]}
})";

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CApi : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("aaeal_capi_" + std::string(::testing::UnitTest::GetInstance()
                                            ->current_test_info()
                                            ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    ASSERT_EQ(aaeal_config_create(&cfg_), AAEAL_OK);
    ASSERT_EQ(aaeal_config_merge_json(cfg_, kTinyConfig), AAEAL_OK) << aaeal_last_error();
    ASSERT_EQ(aaeal_dataset_synthesize(100, 8, 0.5, 0.05, 3, &ds_), AAEAL_OK);
  }
  void TearDown() override {
    aaeal_dataset_free(ds_);
    aaeal_config_free(cfg_);
    fs::remove_all(dir_);
  }
  std::string path(const char* name) const { return (dir_ / name).string(); }

  fs::path dir_;
  aaeal_config cfg_ = nullptr;
  aaeal_dataset ds_ = nullptr;
};

TEST(CApiBasics, VersionAndStatusNames) {
  EXPECT_STREQ(aaeal_version(), "0.1.0");
  EXPECT_STREQ(aaeal_status_name(AAEAL_OK), "ok");
  EXPECT_STREQ(aaeal_status_name(AAEAL_ERR_CONFLICT), "conflict");
  EXPECT_STREQ(aaeal_status_name(static_cast<aaeal_status>(99)), "unknown status");
}

TEST(CApiBasics, NullArgumentsAreInputErrors) {
  EXPECT_EQ(aaeal_config_create(nullptr), AAEAL_ERR_INPUT);
  EXPECT_NE(std::string(aaeal_last_error()).find("NULL"), std::string::npos);
  int64_t n = 0;
  EXPECT_EQ(aaeal_markup_actions(1, 42, &n), AAEAL_OK);
  EXPECT_STREQ(aaeal_last_error(), "");
  EXPECT_EQ(aaeal_markup_actions(1, 42, nullptr), AAEAL_ERR_INPUT);
  EXPECT_EQ(aaeal_train(nullptr, nullptr, 0.5, "x", nullptr), AAEAL_ERR_INPUT);
  EXPECT_EQ(aaeal_dataset_size(nullptr), 0u);
  aaeal_config_free(nullptr);
  aaeal_dataset_free(nullptr);
  aaeal_service_free(nullptr);
}

TEST(CApiBasics, Accounting) {
  int64_t actions = 0;
  ASSERT_EQ(aaeal_markup_actions(20340, 42, &actions), AAEAL_OK);
  EXPECT_EQ(actions, 854280);
  double acc = 0.0;
  ASSERT_EQ(aaeal_composed_accuracy(20340, 226124, 0.95057, &acc), AAEAL_OK);
  EXPECT_NEAR(acc, 0.9550, 1e-4);
  EXPECT_EQ(aaeal_composed_accuracy(10, 5, 0.9, &acc), AAEAL_ERR_INPUT);
  double r = 0.0;
  ASSERT_EQ(aaeal_ratio_r(130000, 20000, &r), AAEAL_OK);
  EXPECT_EQ(r, 6.5);
  EXPECT_EQ(aaeal_ratio_r(1, 0, &r), AAEAL_ERR_INPUT);
}

TEST(CApiBasics, ConfigJson) {
  aaeal_config cfg = nullptr;
  ASSERT_EQ(aaeal_config_create(&cfg), AAEAL_OK);
  EXPECT_EQ(aaeal_config_merge_json(cfg, "{not json"), AAEAL_ERR_CONFIG);
  EXPECT_EQ(aaeal_config_merge_json(cfg, R"({"bogus": 1})"), AAEAL_ERR_CONFIG);
  ASSERT_EQ(aaeal_config_merge_json(cfg, R"({"seed": 77})"), AAEAL_OK);

  size_t needed = 0;
  ASSERT_EQ(aaeal_config_to_json(cfg, nullptr, 0, &needed), AAEAL_OK);
  ASSERT_GT(needed, 1u);
  std::string small(4, '\0');
  EXPECT_EQ(aaeal_config_to_json(cfg, small.data(), small.size(), &needed),
            AAEAL_ERR_INPUT);
  std::string buf(needed, '\0');
  ASSERT_EQ(aaeal_config_to_json(cfg, buf.data(), buf.size(), &needed), AAEAL_OK);
  EXPECT_EQ(buf.back(), '\0');
  EXPECT_NE(buf.find("\"seed\": 77"), std::string::npos);

  // The dump reloads to the same document.
  const fs::path file = fs::temp_directory_path() / "aaeal_capi_cfg.json";
  std::ofstream(file) << buf.c_str();
  aaeal_config again = nullptr;
  ASSERT_EQ(aaeal_config_load(file.string().c_str(), &again), AAEAL_OK);
  std::string buf2(needed, '\0');
  ASSERT_EQ(aaeal_config_to_json(again, buf2.data(), buf2.size(), &needed), AAEAL_OK);
  EXPECT_EQ(buf2, buf);
  EXPECT_EQ(aaeal_config_load("/nonexistent/cfg.json", &again), AAEAL_ERR_IO);
  aaeal_config_free(again);
  aaeal_config_free(cfg);
  fs::remove(file);
}

TEST_F(CApi, DatasetSaveLoad) {
  EXPECT_EQ(aaeal_dataset_size(ds_), 100u);
  ASSERT_EQ(aaeal_dataset_save(ds_, path("data").c_str()), AAEAL_OK);
  aaeal_dataset loaded = nullptr;
  ASSERT_EQ(aaeal_dataset_load(path("data").c_str(), path("data/labels.csv").c_str(),
                               &loaded),
            AAEAL_OK)
      << aaeal_last_error();
  EXPECT_EQ(aaeal_dataset_size(loaded), 100u);
  aaeal_dataset_free(loaded);
  EXPECT_NE(aaeal_dataset_load(path("missing").c_str(), path("missing.csv").c_str(),
                               &loaded),
            AAEAL_OK);
  aaeal_dataset bad = nullptr;
  EXPECT_EQ(aaeal_dataset_synthesize(10, 0, 0.5, 0.05, 1, &bad), AAEAL_ERR_INPUT);
}

TEST_F(CApi, TrainThenEvaluate) {
  aaeal_train_result res{};
  ASSERT_EQ(aaeal_train(ds_, cfg_, 0.5, path("model.json").c_str(), &res), AAEAL_OK)
      << aaeal_last_error();
  EXPECT_EQ(res.labeled, 40u);
  EXPECT_EQ(res.unlabeled, 40u);
  double acc = -1.0;
  ASSERT_EQ(aaeal_evaluate(ds_, cfg_, path("model.json").c_str(), "test", &acc),
            AAEAL_OK);
  EXPECT_EQ(acc, res.test_acc);
  EXPECT_EQ(aaeal_evaluate(ds_, cfg_, path("model.json").c_str(), "bogus", &acc),
            AAEAL_ERR_INPUT);
  EXPECT_EQ(aaeal_train(ds_, cfg_, 1.5, path("m2.json").c_str(), &res), AAEAL_ERR_INPUT);
}

TEST_F(CApi, ActiveLearningRunResumes) {
  aaeal_al_summary full{};
  ASSERT_EQ(aaeal_al_run(ds_, cfg_, path("full.csv").c_str(), nullptr, nullptr, 0, &full),
            AAEAL_OK)
      << aaeal_last_error();
  EXPECT_EQ(full.rounds, 6u);
  EXPECT_EQ(full.labeled, 8u);
  EXPECT_EQ(full.actions, 42 * 8);

  aaeal_al_summary part{};
  ASSERT_EQ(aaeal_al_run(ds_, cfg_, path("part.csv").c_str(), nullptr,
                         path("run.json").c_str(), 2, &part),
            AAEAL_OK);
  EXPECT_EQ(part.rounds, 2u);
  aaeal_al_summary rest{};
  ASSERT_EQ(aaeal_al_run(ds_, cfg_, path("rest.csv").c_str(), path("run.json").c_str(),
                         nullptr, 0, &rest),
            AAEAL_OK)
      << aaeal_last_error();
  EXPECT_EQ(rest.rounds, 6u);
  EXPECT_EQ(rest.final_test_acc, full.final_test_acc);
  EXPECT_EQ(slurp(path("rest.csv")), slurp(path("full.csv")));
}

TEST_F(CApi, ScalingExperiment) {
  size_t rows = 0;
  ASSERT_EQ(aaeal_scaling_experiment(ds_, cfg_, path("scaling.csv").c_str(), &rows),
            AAEAL_OK)
      << aaeal_last_error();
  EXPECT_EQ(rows, 8u);
  const std::string csv = slurp(path("scaling.csv"));
  EXPECT_EQ(csv.rfind("N,A,R,seed,final_test_acc\n", 0), 0u);
}

TEST_F(CApi, ServiceCheckpointRoundTrip) {
  aaeal_service svc = nullptr;
  ASSERT_EQ(aaeal_service_create(ds_, cfg_, &svc), AAEAL_OK) << aaeal_last_error();
  ASSERT_EQ(aaeal_service_save_checkpoint(svc, path("svc.json").c_str()), AAEAL_OK);
  aaeal_service again = nullptr;
  ASSERT_EQ(aaeal_service_resume(ds_, path("svc.json").c_str(), nullptr, &again),
            AAEAL_OK)
      << aaeal_last_error();
  ASSERT_EQ(aaeal_service_save_checkpoint(again, path("svc2.json").c_str()), AAEAL_OK);
  EXPECT_EQ(slurp(path("svc2.json")), slurp(path("svc.json")));
  EXPECT_EQ(aaeal_service_listen(again, "256.0.0.1", 0), AAEAL_ERR_IO);
  EXPECT_EQ(aaeal_service_stop(again), AAEAL_OK);
  aaeal_service_free(again);

  std::ofstream(path("broken.json")) << "{\"format_version\": ";
  aaeal_service broken = nullptr;
  EXPECT_EQ(aaeal_service_resume(ds_, path("broken.json").c_str(), nullptr, &broken),
            AAEAL_ERR_FORMAT);
  aaeal_service_free(svc);
}

}  // namespace
