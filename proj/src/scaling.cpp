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

#include "scaling.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <exception>
#include <fstream>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>
#include <tuple>

#include "error.hpp"
#include "metrics.hpp"

namespace aaeal {

namespace {

struct Cell {
  std::size_t budget;
  std::size_t pool_size;
  std::uint64_t seed;
};

template <typename T>
T parse_field(const std::string& s, std::size_t row, const char* name) {
  T v{};
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || end != s.data() + s.size()) {
    fail(ErrorKind::kFormat, "scaling row " + std::to_string(row) + ": bad " +
                                 name + " '" + s + "'");
  }
  return v;
}

}  // namespace

void ScalingConfig::validate() const {
  if (budgets.empty() || pool_sizes.empty() || seeds.empty()) {
    fail(ErrorKind::kConfig, "scaling config needs budgets, pool sizes and seeds");
  }
  for (std::size_t a : budgets) {
    if (a < 1) fail(ErrorKind::kConfig, "scaling budget A must be at least 1");
    for (std::size_t n : pool_sizes) {
      if (n < a) {
        fail(ErrorKind::kConfig, "scaling pool size N=" + std::to_string(n) +
                                     " is below budget A=" + std::to_string(a));
      }
    }
  }
}

std::vector<ScalingRow> run_scaling_experiment(
    const ScalingConfig& cfg, const Dataset& dataset, const DatasetSplit& split,
    const TrainConfig& train, Strategy strategy, const Oracle& oracle,
    const ScalingSchedule& schedule) {
  cfg.validate();
  const std::size_t max_n = *std::max_element(cfg.pool_sizes.begin(), cfg.pool_sizes.end());
  if (split.train_ids.size() < max_n) {
    fail(ErrorKind::kInput, "insufficient data: scaling needs " + std::to_string(max_n) +
                                " training images, split has " +
                                std::to_string(split.train_ids.size()));
  }
  std::vector<std::string> train_ids = split.train_ids;
  std::sort(train_ids.begin(), train_ids.end());

  std::vector<Cell> cells;
  for (std::size_t a : cfg.budgets) {
    for (std::size_t n : cfg.pool_sizes) {
      for (std::uint64_t s : cfg.seeds) cells.push_back({a, n, s});
    }
  }
  std::vector<ScalingRow> rows(cells.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mu;

  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      const Cell& c = cells[i];
      try {
        // The subsample depends on (seed, N) only, so budgets share pools.
        std::vector<std::string> pool = train_ids;
        std::seed_seq sseq{static_cast<std::uint32_t>(c.seed),
                           static_cast<std::uint32_t>(c.seed >> 32),
                           static_cast<std::uint32_t>(c.pool_size)};
        std::mt19937_64 rng(sseq);
        std::shuffle(pool.begin(), pool.end(), rng);
        pool.resize(c.pool_size);
        DatasetSplit cell_split{pool, split.val_ids, split.test_ids};
        const AlSchedule sched = build_schedule_for_budget(
            c.pool_size, c.budget, schedule.seed_frac, schedule.step_frac,
            schedule.cap_frac);
        const auto reports = run_active_learning(dataset, cell_split, sched, train,
                                                 strategy, c.seed, oracle);
        rows[i] = {c.pool_size, c.budget, ratio_r(static_cast<double>(c.pool_size),
                                                  static_cast<double>(c.budget)),
                   c.seed, reports.back().test_acc};
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(cfg.threads,
                                                           static_cast<unsigned>(cells.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  std::sort(rows.begin(), rows.end(), [](const ScalingRow& a, const ScalingRow& b) {
    return std::tie(a.budget, a.pool_size, a.seed) < std::tie(b.budget, b.pool_size, b.seed);
  });
  return rows;
}

std::string format_scaling_csv(const std::vector<ScalingRow>& rows) {
  if (rows.empty()) fail(ErrorKind::kInput, "no scaling rows to write");
  std::string out = std::string(kScalingCsvHeader) + "\n";
  for (const ScalingRow& r : rows) {
    out += std::to_string(r.pool_size) + "," + std::to_string(r.budget) + "," +
           format_double(r.ratio) + "," + std::to_string(r.seed) + "," +
           format_double(r.final_test_acc) + "\n";
  }
  return out;
}

std::vector<ScalingRow> parse_scaling_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) fail(ErrorKind::kFormat, "scaling csv: empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kScalingCsvHeader) {
    fail(ErrorKind::kFormat, "scaling csv: unexpected header '" + line + "'");
  }
  std::vector<ScalingRow> rows;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) f.push_back(cell);
    if (f.size() != 5) fail(ErrorKind::kFormat, "scaling row " + std::to_string(row) + ": expected 5 columns");
    rows.push_back({parse_field<std::size_t>(f[0], row, "N"),
                    parse_field<std::size_t>(f[1], row, "A"),
                    parse_field<double>(f[2], row, "R"),
                    parse_field<std::uint64_t>(f[3], row, "seed"),
                    parse_field<double>(f[4], row, "final_test_acc")});
  }
  return rows;
}

void emit_scaling_csv(const std::vector<ScalingRow>& rows,
                      const std::filesystem::path& path) {
  const std::string text = format_scaling_csv(rows);
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::kIo, "cannot write " + path.string());
  out << text;
  if (!out) fail(ErrorKind::kIo, "write failed for " + path.string());
}

}  // namespace aaeal
