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

#include "metrics.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "error.hpp"

namespace aaeal {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

template <typename T>
T parse_field(const std::string& s, std::size_t row, const char* name) {
  T v{};
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || end != s.data() + s.size()) {
    fail(ErrorKind::kFormat, "report row " + std::to_string(row) + ": bad " +
                                 name + " '" + s + "'");
  }
  return v;
}

}  // namespace

double accuracy(std::span<const int> predicted, std::span<const int> truth) {
  if (predicted.size() != truth.size()) {
    fail(ErrorKind::kInput, "accuracy: prediction and truth lengths differ");
  }
  if (predicted.empty()) fail(ErrorKind::kInput, "accuracy: no predictions");
  std::size_t correct = 0;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    correct += predicted[i] == truth[i] ? 1 : 0;
  }
  return static_cast<double>(correct) / static_cast<double>(predicted.size());
}

std::int64_t markup_actions(std::int64_t n_labeled, std::int64_t votes_per_label) {
  if (n_labeled < 0) fail(ErrorKind::kInput, "labeled count must be nonnegative");
  return n_labeled * votes_per_label;
}

double composed_accuracy(const ExtrapolationInput& in) {
  if (in.labeled <= 0) fail(ErrorKind::kInput, "labeled count A must be positive");
  if (in.labeled > in.corpus) {
    fail(ErrorKind::kInput, "labeled count A exceeds corpus size N");
  }
  if (!(in.acc_u >= 0.0 && in.acc_u <= 1.0)) {
    fail(ErrorKind::kInput, "acc_u must lie in [0, 1]");
  }
  const double a = static_cast<double>(in.labeled);
  const double n = static_cast<double>(in.corpus);
  return (a + (n - a) * in.acc_u) / n;
}

double ratio_r(double corpus, double labeled) {
  if (!(labeled >= 1.0)) fail(ErrorKind::kInput, "labeled count A must be at least 1");
  return corpus / labeled;
}

std::vector<int> threshold_labels(std::span<const double> probabilities) {
  std::vector<int> out;
  out.reserve(probabilities.size());
  for (double p : probabilities) out.push_back(binarize_label(p));
  return out;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_report_csv(const std::vector<RoundReport>& rows) {
  if (rows.empty()) fail(ErrorKind::kInput, "no round reports to write");
  std::string out = std::string(kReportCsvHeader) + "\n";
  for (const RoundReport& r : rows) {
    out += std::to_string(r.round) + "," + std::to_string(r.labeled) + "," +
           std::to_string(r.actions) + "," + format_double(r.val_acc) + "," +
           format_double(r.test_acc) + "," + to_string(r.strategy) + "," +
           std::to_string(r.seed) + "\n";
  }
  return out;
}

std::vector<RoundReport> parse_report_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) fail(ErrorKind::kFormat, "report: empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kReportCsvHeader) fail(ErrorKind::kFormat, "report: unexpected header '" + line + "'");
  std::vector<RoundReport> rows;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split_fields(line);
    if (f.size() != 7) fail(ErrorKind::kFormat, "report row " + std::to_string(row) + ": expected 7 columns");
    RoundReport r;
    r.round = parse_field<std::size_t>(f[0], row, "round");
    r.labeled = parse_field<std::size_t>(f[1], row, "labeled");
    r.actions = parse_field<std::int64_t>(f[2], row, "actions");
    r.val_acc = parse_field<double>(f[3], row, "val_acc");
    r.test_acc = parse_field<double>(f[4], row, "test_acc");
    try {
      r.strategy = strategy_from_string(f[5]);
    } catch (const Error&) {
      fail(ErrorKind::kFormat, "report row " + std::to_string(row) + ": bad strategy '" + f[5] + "'");
    }
    r.seed = parse_field<std::uint64_t>(f[6], row, "seed");
    rows.push_back(r);
  }
  return rows;
}

void emit_report_csv(const std::vector<RoundReport>& rows,
                     const std::filesystem::path& path) {
  const std::string text = format_report_csv(rows);
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::kIo, "cannot write " + path.string());
  out << text;
  if (!out) fail(ErrorKind::kIo, "write failed for " + path.string());
}

}  // namespace aaeal
