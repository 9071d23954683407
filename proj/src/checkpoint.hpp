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

#ifndef AAEAL_CHECKPOINT_HPP_
#define AAEAL_CHECKPOINT_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>

#include "aae.hpp"
#include "json.hpp"

namespace aaeal {

inline constexpr int kCheckpointFormatVersion = 1;

struct ModelCheckpoint {
  AaeModel model;
  std::uint64_t rng_seed = 0;
  std::size_t rounds_completed = 0;
};

// {format_version, d_z, input_mean, input_scale,
//  networks: {encoder|decoder|discriminator|classifier:
//    [{fan_in, fan_out, activation, weights, bias}]},
//  rng_seed, rounds_completed}
// Doubles are written in shortest round-trip form, so parameters reload
// bit-exactly.
nlohmann::json model_to_json(const ModelCheckpoint& ckpt);
ModelCheckpoint model_from_json(const nlohmann::json& doc);

void save_model(const ModelCheckpoint& ckpt, const std::filesystem::path& path);
ModelCheckpoint load_model(const std::filesystem::path& path);

// Whole-file JSON helpers. Writes go through a temporary file and a rename;
// parse failures and truncation surface as format errors.
void write_json_file(const nlohmann::json& doc, const std::filesystem::path& path);
nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace aaeal

#endif  // AAEAL_CHECKPOINT_HPP_
