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

#ifndef AAEAL_METRICS_HPP_
#define AAEAL_METRICS_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "active_learning.hpp"

namespace aaeal {

// Fraction of positions where predicted equals truth.
double accuracy(std::span<const int> predicted, std::span<const int> truth);

inline constexpr std::int64_t kVotesPerLabel = 42;

std::int64_t markup_actions(std::int64_t n_labeled,
                            std::int64_t votes_per_label = kVotesPerLabel);

struct ExtrapolationInput {
  std::int64_t labeled = 0;  // A: images labeled by the oracle
  std::int64_t corpus = 0;   // N: size of the corpus being classified
  double acc_u = 0.0;        // model accuracy on the unlabeled part
};

// Corpus-level accuracy when the labeled part counts as correct:
// (A + (N - A) * acc_u) / N.
double composed_accuracy(const ExtrapolationInput& in);

// R = N / A.
double ratio_r(double corpus, double labeled);

// Predicted labels from probabilities (p >= 0.5 -> 1).
std::vector<int> threshold_labels(std::span<const double> probabilities);

// Round reports as CSV: round,labeled,actions,val_acc,test_acc,strategy,seed.
inline constexpr const char* kReportCsvHeader =
    "round,labeled,actions,val_acc,test_acc,strategy,seed";
std::string format_report_csv(const std::vector<RoundReport>& rows);
std::vector<RoundReport> parse_report_csv(const std::string& text);
void emit_report_csv(const std::vector<RoundReport>& rows,
                     const std::filesystem::path& path);

// Decimal form with 17 significant digits.
std::string format_double(double v);

}  // namespace aaeal

#endif  // AAEAL_METRICS_HPP_
