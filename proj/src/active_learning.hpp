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

#ifndef AAEAL_ACTIVE_LEARNING_HPP_
#define AAEAL_ACTIVE_LEARNING_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "aae.hpp"
#include "dataset.hpp"
#include "error.hpp"
#include "json.hpp"

namespace aaeal {

enum class Strategy { kUncertainty, kRandom };
const char* to_string(Strategy s);
Strategy strategy_from_string(const std::string& name);

// |p - 0.5|; smaller means more uncertain.
double uncertainty_score(double p);

// Uncertainty: the k ids with the smallest score, ties by ascending id.
// Random: k ids drawn uniformly without replacement.
std::vector<std::string> select_queries(
    const std::map<std::string, double>& predictions, std::size_t k,
    Strategy strategy, std::mt19937_64& rng);

struct AlSchedule {
  double seed_frac = 0.04;
  double step_frac = 0.01;
  double cap_frac = 0.10;
  std::size_t n_train = 0;
  std::vector<std::size_t> quotas;  // labels to acquire per round

  std::size_t cap() const;
};

// Quotas are round(frac * n_train), at least one label each; the last round is
// truncated so the cumulative count lands exactly on round(cap_frac * n_train).
AlSchedule build_schedule(std::size_t n_train, double seed_frac = 0.04,
                          double step_frac = 0.01, double cap_frac = 0.10);
// Same protocol for a fixed label budget: quotas are those of a nominal pool
// of budget / cap_frac images, applied to a pool of n_train.
AlSchedule build_schedule_for_budget(std::size_t n_train, std::size_t budget,
                                     double seed_frac = 0.04,
                                     double step_frac = 0.01,
                                     double cap_frac = 0.10);

enum class OracleMode { kDataset, kHuman };

struct Oracle {
  OracleMode mode = OracleMode::kDataset;
  std::int64_t votes_per_label = 42;  // markup actions charged per label
};

// Disjoint labeled / unlabeled partition of a fixed training pool.
class PoolState {
 public:
  PoolState() = default;
  explicit PoolState(const std::vector<std::string>& pool_ids);
  // Rebuilds a saved partition.
  static PoolState restore(const std::vector<std::string>& pool_ids,
                           const std::map<std::string, int>& labeled,
                           std::int64_t actions_spent);

  std::size_t pool_size() const { return labeled_.size() + unlabeled_.size(); }
  bool contains(const std::string& id) const;
  bool is_labeled(const std::string& id) const { return labeled_.count(id) > 0; }
  const std::map<std::string, int>& labeled() const { return labeled_; }
  const std::set<std::string>& unlabeled() const { return unlabeled_; }
  std::int64_t actions_spent() const { return actions_spent_; }

  // Moves id from unlabeled to labeled and charges cost.
  void apply(const std::string& id, int label, std::int64_t cost);

  friend bool operator==(const PoolState&, const PoolState&) = default;

 private:
  std::map<std::string, int> labeled_;
  std::set<std::string> unlabeled_;
  std::int64_t actions_spent_ = 0;
};

struct LabelOutcome {
  int label = 0;
  std::int64_t cost = 0;
};

// Dataset mode reads the vote fraction from `dataset`; human mode takes the
// submitted answer. Errors: unknown id (input), already labeled (state).
LabelOutcome oracle_label(const Oracle& oracle, const std::string& id,
                          const PoolState& pool, const Dataset* dataset,
                          std::optional<int> human_answer = std::nullopt);

struct RoundReport {
  std::size_t round = 0;
  std::size_t labeled = 0;
  std::int64_t actions = 0;
  double val_acc = 0.0;
  double test_acc = 0.0;
  Strategy strategy = Strategy::kUncertainty;
  std::uint64_t seed = 0;
  // Accuracy on the still-unlabeled remainder of the pool; not part of the
  // CSV schema.
  double unlabeled_acc = 0.0;

  friend bool operator==(const RoundReport&, const RoundReport&) = default;
};

// One active-learning run as a resumable state machine:
//   awaiting labels -> (quota met) -> ready to train -> train_round() -> ...
// The dataset must outlive the run.
class ActiveLearningRun {
 public:
  enum class Phase { kAwaitingLabels, kReadyToTrain, kComplete };

  ActiveLearningRun(const Dataset& dataset, DatasetSplit split,
                    AlSchedule schedule, TrainConfig train, Strategy strategy,
                    std::uint64_t seed, Oracle oracle);

  Phase phase() const;
  std::size_t round() const { return reports_.size(); }
  std::size_t round_quota() const;
  std::size_t quota_remaining() const { return pending_.size(); }
  // Unanswered queries of the current round, in priority order.
  const std::vector<std::string>& pending() const { return pending_; }
  bool is_pending(const std::string& id) const;

  // Records the oracle's label for a pending id and charges
  // oracle.votes_per_label markup actions. Errors: id not pending (conflict),
  // label outside {0, 1} (validation).
  void answer(const std::string& id, int label);

  // Trains a fresh model on the current labels, evaluates it and selects the
  // next round's queries. Requires the round quota to be met.
  const RoundReport& train_round();

  const std::vector<RoundReport>& reports() const { return reports_; }
  const PoolState& pool() const { return pool_; }
  const AlSchedule& schedule() const { return schedule_; }
  const DatasetSplit& split() const { return split_; }
  const Oracle& oracle() const { return oracle_; }
  const Dataset& dataset() const { return *dataset_; }
  Strategy strategy() const { return strategy_; }
  std::uint64_t seed() const { return seed_; }
  const TrainConfig& train_config() const { return train_; }
  // Model from the most recent round, if any.
  const AaeModel* model() const { return model_ ? &*model_ : nullptr; }

  nlohmann::json to_json() const;
  static ActiveLearningRun from_json(const nlohmann::json& doc,
                                     const Dataset& dataset);

 private:
  void select_next_queries(const std::map<std::string, double>& predictions);

  const Dataset* dataset_;
  DatasetSplit split_;
  AlSchedule schedule_;
  TrainConfig train_;
  Strategy strategy_;
  std::uint64_t seed_;
  Oracle oracle_;
  std::mt19937_64 rng_;
  PoolState pool_;
  std::vector<std::string> pending_;
  std::vector<RoundReport> reports_;
  std::optional<AaeModel> model_;
};

// Thrown when the oracle fails mid-run; carries the reports completed so far.
class RunAborted : public Error {
 public:
  RunAborted(const std::string& what, std::vector<RoundReport> partial)
      : Error(ErrorKind::kState, what), partial_(std::move(partial)) {}
  const std::vector<RoundReport>& partial_reports() const { return partial_; }

 private:
  std::vector<RoundReport> partial_;
};

using LabelSource = std::function<int(const std::string& id)>;

// Full run with the dataset oracle. `answers` overrides the label lookup
// (scripted or failing oracles); by default labels come from the dataset.
std::vector<RoundReport> run_active_learning(
    const Dataset& dataset, const DatasetSplit& split,
    const AlSchedule& schedule, const TrainConfig& train, Strategy strategy,
    std::uint64_t seed, const Oracle& oracle,
    const LabelSource& answers = nullptr);

// Drives an existing run to completion with the dataset oracle.
void complete_with_dataset_oracle(ActiveLearningRun& run,
                                  const LabelSource& answers = nullptr);

}  // namespace aaeal

#endif  // AAEAL_ACTIVE_LEARNING_HPP_
