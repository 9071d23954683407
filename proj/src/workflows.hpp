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

#ifndef AAEAL_WORKFLOWS_HPP_
#define AAEAL_WORKFLOWS_HPP_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "active_learning.hpp"
#include "checkpoint.hpp"
#include "config.hpp"
#include "dataset.hpp"

namespace aaeal {

DatasetSplit split_for(const Dataset& dataset, const RunSettings& settings);

struct FixedLabelResult {
  ModelCheckpoint checkpoint;
  std::size_t labeled = 0;
  std::size_t unlabeled = 0;
  double val_acc = 0.0;
  double test_acc = 0.0;
};

// Labels a uniformly random label_fraction of the train split and trains one
// model with the rest of the split as the unlabeled pool.
FixedLabelResult train_fixed_labels(const Dataset& dataset,
                                    const RunSettings& settings,
                                    double label_fraction);

// Accuracy of model on the named part of the split ("train", "val", "test")
// or on the whole dataset ("all").
double evaluate_model(const AaeModel& model, const Dataset& dataset,
                      const RunSettings& settings, const std::string& part);

struct AlRunOptions {
  std::optional<std::filesystem::path> resume;
  std::optional<std::filesystem::path> checkpoint;  // rewritten after each round
  std::size_t max_rounds = 0;                       // 0: until complete
};

// Dataset-oracle run; returns all reports produced so far.
ActiveLearningRun run_with_checkpoints(const Dataset& dataset,
                                       const RunSettings& settings,
                                       const AlRunOptions& options);

}  // namespace aaeal

#endif  // AAEAL_WORKFLOWS_HPP_
