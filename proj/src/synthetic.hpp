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

#ifndef AAEAL_SYNTHETIC_HPP_
#define AAEAL_SYNTHETIC_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "dataset.hpp"

namespace aaeal {

// Shape parameters of one synthetic galaxy. Class 0 ("smooth") is the blob
// alone; class 1 ("featured") adds the bar.
struct GalaxyShape {
  double radius = 2.0;          // blob Gaussian sigma, pixels
  double blob_peak = 0.5;       // blob central intensity
  bool barred = false;
  double bar_angle = 0.0;       // radians
  double bar_half_length = 4.0; // pixels
  double bar_width = 0.7;       // Gaussian sigma across the bar, pixels
  double bar_peak = 0.2;
};

struct SyntheticOptions {
  std::size_t n = 1000;
  std::size_t side = 16;
  double p_class1 = 0.5;
  double noise_sigma = 0.05;
  std::uint64_t seed = 1;
};

struct SyntheticSet {
  Dataset dataset;
  std::vector<GalaxyShape> shapes;  // parallel to dataset.ids()
};

SyntheticSet generate_synthetic(const SyntheticOptions& opts);

// Noise-free rendering; with include_bar = false a barred galaxy renders as
// its blob-only counterpart.
std::vector<double> render_galaxy(const GalaxyShape& shape, std::size_t side,
                                  bool include_bar = true);
// Pixels where the bar contributes a positive intensity.
std::vector<bool> bar_mask(const GalaxyShape& shape, std::size_t side);

}  // namespace aaeal

#endif  // AAEAL_SYNTHETIC_HPP_
