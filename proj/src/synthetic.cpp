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

#include "synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "error.hpp"

namespace aaeal {

namespace {

// Blob total flux is held fixed so that the bar, not the blob radius, drives
// the brightness difference between classes.
constexpr double kBlobFlux = 10.0;
constexpr double kMinRadius = 1.6;
constexpr double kMaxRadius = 2.6;
constexpr double kMinBarPeak = 0.06;
constexpr double kMaxBarPeak = 0.32;
constexpr double kBarCutoffSigmas = 2.0;

double center(std::size_t side) { return (static_cast<double>(side) - 1.0) / 2.0; }

double bar_value(const GalaxyShape& s, double dx, double dy) {
  const double c = std::cos(s.bar_angle);
  const double sn = std::sin(s.bar_angle);
  const double along = dx * c + dy * sn;
  const double across = -dx * sn + dy * c;
  if (std::abs(along) > s.bar_half_length ||
      std::abs(across) > kBarCutoffSigmas * s.bar_width) {
    return 0.0;
  }
  // Soft taper toward the bar ends.
  const double t = std::abs(along) / s.bar_half_length;
  const double taper = 1.0 - 0.5 * t * t;
  return s.bar_peak * taper *
         std::exp(-across * across / (2.0 * s.bar_width * s.bar_width));
}

std::string make_id(std::size_t i, std::size_t n) {
  std::string digits = std::to_string(i);
  const std::size_t width = std::max<std::size_t>(5, std::to_string(n - 1).size());
  return "g" + std::string(width - digits.size(), '0') + digits;
}

}  // namespace

std::vector<double> render_galaxy(const GalaxyShape& shape, std::size_t side,
                                  bool include_bar) {
  std::vector<double> px(side * side);
  const double c = center(side);
  const double two_r2 = 2.0 * shape.radius * shape.radius;
  for (std::size_t y = 0; y < side; ++y) {
    for (std::size_t x = 0; x < side; ++x) {
      const double dx = static_cast<double>(x) - c;
      const double dy = static_cast<double>(y) - c;
      double v = shape.blob_peak * std::exp(-(dx * dx + dy * dy) / two_r2);
      if (include_bar && shape.barred) v += bar_value(shape, dx, dy);
      px[y * side + x] = std::clamp(v, 0.0, 1.0);
    }
  }
  return px;
}

std::vector<bool> bar_mask(const GalaxyShape& shape, std::size_t side) {
  std::vector<bool> mask(side * side, false);
  if (!shape.barred) return mask;
  const double c = center(side);
  for (std::size_t y = 0; y < side; ++y) {
    for (std::size_t x = 0; x < side; ++x) {
      mask[y * side + x] = bar_value(shape, static_cast<double>(x) - c,
                                     static_cast<double>(y) - c) > 0.0;
    }
  }
  return mask;
}

SyntheticSet generate_synthetic(const SyntheticOptions& opts) {
  if (opts.n < 2) fail(ErrorKind::kInput, "synthetic dataset needs n >= 2");
  if (opts.side < 8) fail(ErrorKind::kInput, "synthetic images need side >= 8");
  if (!(opts.p_class1 >= 0.0 && opts.p_class1 <= 1.0)) {
    fail(ErrorKind::kInput, "p_class1 must lie in [0, 1]");
  }
  if (!(opts.noise_sigma >= 0.0)) fail(ErrorKind::kInput, "noise_sigma must be >= 0");

  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> noise(0.0, 1.0);
  const double side = static_cast<double>(opts.side);

  SyntheticSet out;
  std::vector<ImageRecord> images;
  std::vector<LabelRecord> labels;
  for (std::size_t i = 0; i < opts.n; ++i) {
    GalaxyShape s;
    s.radius = kMinRadius + (kMaxRadius - kMinRadius) * unit(rng);
    s.blob_peak = kBlobFlux / (2.0 * std::numbers::pi * s.radius * s.radius);
    s.barred = unit(rng) < opts.p_class1;
    s.bar_angle = std::numbers::pi * unit(rng);
    s.bar_half_length = side * (0.22 + 0.16 * unit(rng));
    s.bar_width = 0.6 + 0.3 * unit(rng);
    s.bar_peak = kMinBarPeak + (kMaxBarPeak - kMinBarPeak) * unit(rng);

    ImageRecord img;
    img.id = make_id(i, opts.n);
    img.width = opts.side;
    img.height = opts.side;
    img.pixels = render_galaxy(s, opts.side, true);
    for (double& v : img.pixels) {
      // Always draw, so the stream layout is independent of noise_sigma.
      const double e = noise(rng);
      v = std::clamp(v + opts.noise_sigma * e, 0.0, 1.0);
    }
    labels.push_back({img.id, s.barred ? 1.0 : 0.0});
    images.push_back(std::move(img));
    out.shapes.push_back(s);
  }
  out.dataset = Dataset::join(std::move(images), std::move(labels));
  return out;
}

}  // namespace aaeal
