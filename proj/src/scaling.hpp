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

#ifndef AAEAL_SCALING_HPP_
#define AAEAL_SCALING_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "active_learning.hpp"
#include "dataset.hpp"

namespace aaeal {

// Fixed label budgets A against growing pool sizes N.
struct ScalingConfig {
  std::vector<std::size_t> budgets = {700, 2000};
  std::vector<std::size_t> pool_sizes = {3000, 5000, 7000, 9000, 11000, 13000};
  std::vector<std::uint64_t> seeds = {1};
  unsigned threads = 1;

  void validate() const;
};

struct ScalingRow {
  std::size_t pool_size = 0;  // N
  std::size_t budget = 0;     // A
  double ratio = 0.0;         // R = N / A
  std::uint64_t seed = 0;
  double final_test_acc = 0.0;

  friend bool operator==(const ScalingRow&, const ScalingRow&) = default;
};

struct ScalingSchedule {
  double seed_frac = 0.04;
  double step_frac = 0.01;
  double cap_frac = 0.10;
};

// For every (A, N, seed): subsample N training images, run active learning
// until A labels, record the final test accuracy. Rows come back sorted by
// (A, N, seed).
std::vector<ScalingRow> run_scaling_experiment(
    const ScalingConfig& cfg, const Dataset& dataset, const DatasetSplit& split,
    const TrainConfig& train, Strategy strategy, const Oracle& oracle,
    const ScalingSchedule& schedule = {});

inline constexpr const char* kScalingCsvHeader = "N,A,R,seed,final_test_acc";
std::string format_scaling_csv(const std::vector<ScalingRow>& rows);
std::vector<ScalingRow> parse_scaling_csv(const std::string& text);
void emit_scaling_csv(const std::vector<ScalingRow>& rows,
                      const std::filesystem::path& path);

}  // namespace aaeal

#endif  // AAEAL_SCALING_HPP_
