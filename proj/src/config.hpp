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

#ifndef AAEAL_CONFIG_HPP_
#define AAEAL_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <string>

#include "aae.hpp"
#include "active_learning.hpp"
#include "json.hpp"
#include "scaling.hpp"

namespace aaeal {

struct SplitSettings {
  double train = 0.8;
  double val = 0.1;
  double test = 0.1;
  std::uint64_t seed = 1;
};

// Everything a workflow needs besides the data. Mirrors the JSON config file.
struct RunSettings {
  std::uint64_t seed = 1;
  Strategy strategy = Strategy::kUncertainty;
  TrainConfig train;
  ScalingSchedule schedule;
  Oracle oracle;
  SplitSettings split;
  ScalingConfig scaling;
  std::string checkpoint_path;  // service autosave target; empty disables
};

nlohmann::json to_json(const TrainConfig& cfg);
TrainConfig train_config_from_json(const nlohmann::json& doc,
                                   TrainConfig base = {});

nlohmann::json to_json(const RunSettings& s);
// Overlays doc onto base. Unknown keys are rejected as config errors.
RunSettings settings_from_json(const nlohmann::json& doc, RunSettings base = {});
RunSettings load_settings(const std::filesystem::path& path);

}  // namespace aaeal

#endif  // AAEAL_CONFIG_HPP_
