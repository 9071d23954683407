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

#include "active_learning.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "checkpoint.hpp"
#include "config.hpp"
#include "metrics.hpp"

namespace aaeal {

namespace {

using nlohmann::json;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::size_t round_count(double frac, std::size_t n) {
  return static_cast<std::size_t>(std::llround(frac * static_cast<double>(n)));
}

std::vector<std::string> uniform_pick(const std::vector<std::string>& ids,
                                      std::size_t k, std::mt19937_64& rng) {
  std::vector<std::string> out;
  out.reserve(std::min(k, ids.size()));
  std::sample(ids.begin(), ids.end(), std::back_inserter(out), k, rng);
  return out;
}

std::vector<std::size_t> schedule_quotas(std::size_t seed, std::size_t step,
                                         std::size_t cap) {
  std::vector<std::size_t> quotas{std::min(seed, cap)};
  std::size_t total = quotas[0];
  while (total < cap) {
    const std::size_t q = std::min(step, cap - total);
    quotas.push_back(q);
    total += q;
  }
  return quotas;
}

void check_fractions(double seed_frac, double step_frac, double cap_frac) {
  if (!(seed_frac > 0.0) || !(step_frac > 0.0) || !(cap_frac <= 1.0)) {
    fail(ErrorKind::kConfig, "schedule fractions must satisfy 0 < seed, 0 < step, cap <= 1");
  }
  if (cap_frac < seed_frac) {
    fail(ErrorKind::kConfig, "schedule cap fraction is below the seed fraction");
  }
}

}  // namespace

const char* to_string(Strategy s) {
  return s == Strategy::kUncertainty ? "uncertainty" : "random";
}

Strategy strategy_from_string(const std::string& name) {
  if (name == "uncertainty") return Strategy::kUncertainty;
  if (name == "random") return Strategy::kRandom;
  fail(ErrorKind::kConfig, "unknown strategy '" + name + "' (expected uncertainty or random)");
}

double uncertainty_score(double p) { return std::abs(p - 0.5); }

std::vector<std::string> select_queries(
    const std::map<std::string, double>& predictions, std::size_t k,
    Strategy strategy, std::mt19937_64& rng) {
  if (predictions.empty()) fail(ErrorKind::kInput, "select_queries: no predictions");
  if (k == 0) fail(ErrorKind::kInput, "select_queries: k must be at least 1");
  const std::size_t take = std::min(k, predictions.size());

  if (strategy == Strategy::kRandom) {
    std::vector<std::string> ids;
    ids.reserve(predictions.size());
    for (const auto& [id, p] : predictions) ids.push_back(id);
    return uniform_pick(ids, take, rng);
  }

  std::vector<std::pair<double, const std::string*>> ranked;
  ranked.reserve(predictions.size());
  for (const auto& [id, p] : predictions) ranked.emplace_back(uncertainty_score(p), &id);
  auto less = [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first < b.first : *a.second < *b.second;
  };
  std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(take),
                    ranked.end(), less);
  std::vector<std::string> out;
  out.reserve(take);
  for (std::size_t i = 0; i < take; ++i) out.push_back(*ranked[i].second);
  return out;
}

std::size_t AlSchedule::cap() const {
  std::size_t total = 0;
  for (std::size_t q : quotas) total += q;
  return total;
}

AlSchedule build_schedule(std::size_t n_train, double seed_frac,
                          double step_frac, double cap_frac) {
  check_fractions(seed_frac, step_frac, cap_frac);
  if (n_train == 0) fail(ErrorKind::kConfig, "schedule needs a nonempty pool");
  AlSchedule s{seed_frac, step_frac, cap_frac, n_train, {}};
  const std::size_t cap = std::max<std::size_t>(1, round_count(cap_frac, n_train));
  const std::size_t seed = std::max<std::size_t>(1, round_count(seed_frac, n_train));
  const std::size_t step = std::max<std::size_t>(1, round_count(step_frac, n_train));
  s.quotas = schedule_quotas(seed, step, cap);
  return s;
}

AlSchedule build_schedule_for_budget(std::size_t n_train, std::size_t budget,
                                     double seed_frac, double step_frac,
                                     double cap_frac) {
  check_fractions(seed_frac, step_frac, cap_frac);
  if (budget == 0 || budget > n_train) {
    fail(ErrorKind::kConfig, "label budget must lie in [1, pool size]");
  }
  const double nominal = static_cast<double>(budget) / cap_frac;
  AlSchedule s{seed_frac, step_frac, cap_frac, n_train, {}};
  const auto seed = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(seed_frac * nominal)));
  const auto step = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(step_frac * nominal)));
  s.quotas = schedule_quotas(seed, step, budget);
  return s;
}

PoolState::PoolState(const std::vector<std::string>& pool_ids)
    : unlabeled_(pool_ids.begin(), pool_ids.end()) {
  if (unlabeled_.size() != pool_ids.size()) {
    fail(ErrorKind::kInput, "training pool contains duplicate ids");
  }
}

PoolState PoolState::restore(const std::vector<std::string>& pool_ids,
                             const std::map<std::string, int>& labeled,
                             std::int64_t actions_spent) {
  PoolState p(pool_ids);
  for (const auto& [id, y] : labeled) p.apply(id, y, 0);
  if (actions_spent < 0) fail(ErrorKind::kInput, "actions_spent must be nonnegative");
  p.actions_spent_ = actions_spent;
  return p;
}

bool PoolState::contains(const std::string& id) const {
  return labeled_.count(id) > 0 || unlabeled_.count(id) > 0;
}

void PoolState::apply(const std::string& id, int label, std::int64_t cost) {
  if (label != 0 && label != 1) fail(ErrorKind::kValidation, "label must be 0 or 1");
  if (cost < 0) fail(ErrorKind::kInput, "markup cost must be nonnegative");
  if (labeled_.count(id) > 0) fail(ErrorKind::kState, "id '" + id + "' is already labeled");
  auto it = unlabeled_.find(id);
  if (it == unlabeled_.end()) fail(ErrorKind::kInput, "id '" + id + "' is not in the pool");
  unlabeled_.erase(it);
  labeled_.emplace(id, label);
  actions_spent_ += cost;
}

LabelOutcome oracle_label(const Oracle& oracle, const std::string& id,
                          const PoolState& pool, const Dataset* dataset,
                          std::optional<int> human_answer) {
  if (!pool.contains(id)) fail(ErrorKind::kInput, "unknown id '" + id + "'");
  if (pool.is_labeled(id)) fail(ErrorKind::kState, "id '" + id + "' is already labeled");
  LabelOutcome out;
  out.cost = oracle.votes_per_label;
  if (human_answer.has_value()) {
    if (*human_answer != 0 && *human_answer != 1) {
      fail(ErrorKind::kValidation, "label must be 0 or 1");
    }
    out.label = *human_answer;
  } else {
    if (oracle.mode == OracleMode::kHuman) {
      fail(ErrorKind::kState, "human oracle has no answer for '" + id + "'");
    }
    if (dataset == nullptr) fail(ErrorKind::kState, "dataset oracle has no dataset");
    out.label = dataset->label(dataset->index_of(id));
  }
  return out;
}

ActiveLearningRun::ActiveLearningRun(const Dataset& dataset, DatasetSplit split,
                                     AlSchedule schedule, TrainConfig train,
                                     Strategy strategy, std::uint64_t seed,
                                     Oracle oracle)
    : dataset_(&dataset),
      split_(std::move(split)),
      schedule_(std::move(schedule)),
      train_(std::move(train)),
      strategy_(strategy),
      seed_(seed),
      oracle_(oracle),
      rng_(seed) {
  train_.validate();
  if (split_.train_ids.empty() || split_.val_ids.empty() || split_.test_ids.empty()) {
    fail(ErrorKind::kInput, "every split partition must be nonempty");
  }
  for (const auto* part : {&split_.train_ids, &split_.val_ids, &split_.test_ids}) {
    for (const std::string& id : *part) dataset.index_of(id);
  }
  if (schedule_.n_train != split_.train_ids.size() || schedule_.quotas.empty() ||
      schedule_.cap() > split_.train_ids.size()) {
    fail(ErrorKind::kConfig, "schedule was not built for this training pool");
  }
  if (oracle_.votes_per_label < 1) fail(ErrorKind::kConfig, "votes_per_label must be positive");
  pool_ = PoolState(split_.train_ids);
  std::vector<std::string> ids(pool_.unlabeled().begin(), pool_.unlabeled().end());
  pending_ = uniform_pick(ids, schedule_.quotas[0], rng_);
}

ActiveLearningRun::Phase ActiveLearningRun::phase() const {
  if (reports_.size() >= schedule_.quotas.size()) return Phase::kComplete;
  return pending_.empty() ? Phase::kReadyToTrain : Phase::kAwaitingLabels;
}

std::size_t ActiveLearningRun::round_quota() const {
  return round() < schedule_.quotas.size() ? schedule_.quotas[round()] : 0;
}

bool ActiveLearningRun::is_pending(const std::string& id) const {
  return std::find(pending_.begin(), pending_.end(), id) != pending_.end();
}

void ActiveLearningRun::answer(const std::string& id, int label) {
  if (label != 0 && label != 1) fail(ErrorKind::kValidation, "label must be 0 or 1");
  if (!pool_.contains(id)) fail(ErrorKind::kInput, "unknown id '" + id + "'");
  if (phase() != Phase::kAwaitingLabels) {
    fail(ErrorKind::kConflict, "no labels are being collected right now");
  }
  auto it = std::find(pending_.begin(), pending_.end(), id);
  if (it == pending_.end()) {
    fail(ErrorKind::kConflict, pool_.is_labeled(id)
                                   ? "id '" + id + "' was already answered"
                                   : "id '" + id + "' is not queried in this round");
  }
  const LabelOutcome out = oracle_label(oracle_, id, pool_, dataset_, label);
  pool_.apply(id, out.label, out.cost);
  pending_.erase(it);
}

const RoundReport& ActiveLearningRun::train_round() {
  const Phase ph = phase();
  if (ph == Phase::kComplete) fail(ErrorKind::kState, "run is already complete");
  if (ph == Phase::kAwaitingLabels) {
    fail(ErrorKind::kState, std::to_string(pending_.size()) +
                                " queries of this round are still unanswered");
  }

  std::vector<std::string> lab_ids;
  std::vector<double> lab_values;
  for (const auto& [id, y] : pool_.labeled()) {
    lab_ids.push_back(id);
    lab_values.push_back(y);
  }
  const Tensor labeled = dataset_->images(lab_ids);
  const Tensor labels = Tensor::from(lab_values.size(), 1, lab_values);
  const std::vector<std::string> unl_ids(pool_.unlabeled().begin(),
                                         pool_.unlabeled().end());
  std::optional<Tensor> unlabeled;
  if (!unl_ids.empty()) unlabeled = dataset_->images(unl_ids);

  TrainConfig cfg = train_;
  cfg.seed = splitmix64(seed_ ^ (0xA0761D6478BD642FULL * (round() + 1)));
  AaeModel model = train_model(labeled, labels, unlabeled ? &*unlabeled : nullptr, cfg);

  RoundReport r;
  r.round = round();
  r.labeled = pool_.labeled().size();
  r.actions = pool_.actions_spent();
  r.strategy = strategy_;
  r.seed = seed_;
  auto eval = [&](const std::vector<std::string>& ids) {
    const std::vector<double> p = predict_proba(model, dataset_->images(ids));
    return accuracy(threshold_labels(p), dataset_->labels(ids));
  };
  r.val_acc = eval(split_.val_ids);
  r.test_acc = eval(split_.test_ids);

  std::map<std::string, double> predictions;
  if (unlabeled) {
    const std::vector<double> p = predict_proba(model, *unlabeled);
    for (std::size_t i = 0; i < unl_ids.size(); ++i) predictions.emplace(unl_ids[i], p[i]);
    r.unlabeled_acc = accuracy(threshold_labels(p), dataset_->labels(unl_ids));
  } else {
    r.unlabeled_acc = 1.0;
  }

  reports_.push_back(r);
  model_ = std::move(model);
  if (phase() != Phase::kComplete) select_next_queries(predictions);
  return reports_.back();
}

void ActiveLearningRun::select_next_queries(
    const std::map<std::string, double>& predictions) {
  pending_ = select_queries(predictions, round_quota(), strategy_, rng_);
}

json ActiveLearningRun::to_json() const {
  std::ostringstream rng_state;
  rng_state << rng_;
  json labeled = json::array();
  for (const auto& [id, y] : pool_.labeled()) labeled.push_back({id, y});
  json reports = json::array();
  for (const RoundReport& r : reports_) {
    reports.push_back({{"round", r.round},
                       {"labeled", r.labeled},
                       {"actions", r.actions},
                       {"val_acc", r.val_acc},
                       {"test_acc", r.test_acc},
                       {"unlabeled_acc", r.unlabeled_acc}});
  }
  json doc = {
      {"format_version", kCheckpointFormatVersion},
      {"kind", "active_learning_run"},
      {"seed", seed_},
      {"strategy", aaeal::to_string(strategy_)},
      {"train", aaeal::to_json(train_)},
      {"schedule",
       {{"seed_frac", schedule_.seed_frac},
        {"step_frac", schedule_.step_frac},
        {"cap_frac", schedule_.cap_frac},
        {"n_train", schedule_.n_train},
        {"quotas", schedule_.quotas}}},
      {"oracle",
       {{"mode", oracle_.mode == OracleMode::kDataset ? "dataset" : "human"},
        {"votes_per_label", oracle_.votes_per_label}}},
      {"split",
       {{"train", split_.train_ids}, {"val", split_.val_ids}, {"test", split_.test_ids}}},
      {"pool", {{"labeled", labeled}, {"actions_spent", pool_.actions_spent()}}},
      {"pending", pending_},
      {"rng_state", rng_state.str()},
      {"reports", reports},
      {"model", model_ ? model_to_json({*model_, seed_, reports_.size()}) : json()}};
  return doc;
}

ActiveLearningRun ActiveLearningRun::from_json(const json& doc,
                                               const Dataset& dataset) {
  try {
    if (!doc.is_object() || doc.value("kind", "") != "active_learning_run") {
      fail(ErrorKind::kFormat, "run checkpoint: not an active-learning run document");
    }
    if (doc.at("format_version").get<int>() != kCheckpointFormatVersion) {
      fail(ErrorKind::kFormat, "run checkpoint: unsupported format_version");
    }
    DatasetSplit split;
    split.train_ids = doc.at("split").at("train").get<std::vector<std::string>>();
    split.val_ids = doc.at("split").at("val").get<std::vector<std::string>>();
    split.test_ids = doc.at("split").at("test").get<std::vector<std::string>>();
    const json& sj = doc.at("schedule");
    AlSchedule schedule{sj.at("seed_frac").get<double>(), sj.at("step_frac").get<double>(),
                        sj.at("cap_frac").get<double>(), sj.at("n_train").get<std::size_t>(),
                        sj.at("quotas").get<std::vector<std::size_t>>()};
    Oracle oracle;
    oracle.mode = doc.at("oracle").at("mode").get<std::string>() == "human"
                      ? OracleMode::kHuman
                      : OracleMode::kDataset;
    oracle.votes_per_label = doc.at("oracle").at("votes_per_label").get<std::int64_t>();
    const Strategy strategy = strategy_from_string(doc.at("strategy").get<std::string>());

    ActiveLearningRun run(dataset, std::move(split), std::move(schedule),
                          train_config_from_json(doc.at("train")), strategy,
                          doc.at("seed").get<std::uint64_t>(), oracle);

    std::map<std::string, int> labeled;
    for (const json& entry : doc.at("pool").at("labeled")) {
      labeled.emplace(entry.at(0).get<std::string>(), entry.at(1).get<int>());
    }
    run.pool_ = PoolState::restore(run.split_.train_ids, labeled,
                                   doc.at("pool").at("actions_spent").get<std::int64_t>());

    run.pending_ = doc.at("pending").get<std::vector<std::string>>();
    for (const std::string& id : run.pending_) {
      if (!run.pool_.contains(id) || run.pool_.is_labeled(id)) {
        fail(ErrorKind::kFormat, "run checkpoint: pending id '" + id + "' is not unlabeled");
      }
    }
    std::istringstream rng_state(doc.at("rng_state").get<std::string>());
    rng_state >> run.rng_;
    if (!rng_state) fail(ErrorKind::kFormat, "run checkpoint: bad rng_state");

    run.reports_.clear();
    for (const json& r : doc.at("reports")) {
      RoundReport rep;
      rep.round = r.at("round").get<std::size_t>();
      rep.labeled = r.at("labeled").get<std::size_t>();
      rep.actions = r.at("actions").get<std::int64_t>();
      rep.val_acc = r.at("val_acc").get<double>();
      rep.test_acc = r.at("test_acc").get<double>();
      rep.unlabeled_acc = r.at("unlabeled_acc").get<double>();
      rep.strategy = strategy;
      rep.seed = run.seed_;
      run.reports_.push_back(rep);
    }
    if (run.reports_.size() > run.schedule_.quotas.size()) {
      fail(ErrorKind::kFormat, "run checkpoint: more reports than scheduled rounds");
    }
    if (!doc.at("model").is_null()) run.model_ = model_from_json(doc.at("model")).model;
    return run;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::kFormat, std::string("run checkpoint: ") + e.what());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kFormat) throw;
    fail(ErrorKind::kFormat, std::string("run checkpoint: ") + e.what());
  }
}

void complete_with_dataset_oracle(ActiveLearningRun& run,
                                  const LabelSource& answers) {
  while (run.phase() != ActiveLearningRun::Phase::kComplete) {
    const std::vector<std::string> queries = run.pending();
    for (const std::string& id : queries) {
      int label = 0;
      try {
        label = answers ? answers(id)
                        : oracle_label(run.oracle(), id, run.pool(), &run.dataset()).label;
      } catch (const std::exception& e) {
        throw RunAborted(std::string("oracle failed on '") + id + "': " + e.what(),
                         run.reports());
      }
      run.answer(id, label);
    }
    run.train_round();
  }
}

std::vector<RoundReport> run_active_learning(
    const Dataset& dataset, const DatasetSplit& split, const AlSchedule& schedule,
    const TrainConfig& train, Strategy strategy, std::uint64_t seed,
    const Oracle& oracle, const LabelSource& answers) {
  ActiveLearningRun run(dataset, split, schedule, train, strategy, seed, oracle);
  complete_with_dataset_oracle(run, answers);
  return run.reports();
}

}  // namespace aaeal
