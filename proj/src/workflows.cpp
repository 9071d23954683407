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

#include "workflows.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "error.hpp"
#include "metrics.hpp"
#include "service.hpp"

namespace aaeal {

DatasetSplit split_for(const Dataset& dataset, const RunSettings& s) {
  return make_splits(dataset.ids(), s.split.train, s.split.val, s.split.test,
                     s.split.seed);
}

FixedLabelResult train_fixed_labels(const Dataset& dataset,
                                    const RunSettings& settings,
                                    double label_fraction) {
  if (!(label_fraction > 0.0 && label_fraction <= 1.0)) {
    fail(ErrorKind::kInput, "label fraction must lie in (0, 1]");
  }
  const DatasetSplit split = split_for(dataset, settings);
  std::vector<std::string> pool = split.train_ids;
  std::sort(pool.begin(), pool.end());
  std::mt19937_64 rng(settings.seed);
  std::shuffle(pool.begin(), pool.end(), rng);
  const auto n_lab = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(label_fraction * static_cast<double>(pool.size()))));
  std::vector<std::string> lab(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(n_lab));
  std::vector<std::string> unl(pool.begin() + static_cast<std::ptrdiff_t>(n_lab), pool.end());

  std::vector<double> y;
  for (int v : dataset.labels(lab)) y.push_back(v);
  const Tensor labels = Tensor::from(y.size(), 1, y);
  std::optional<Tensor> unlabeled;
  if (!unl.empty()) unlabeled = dataset.images(unl);
  TrainConfig cfg = settings.train;
  cfg.seed = settings.seed;

  FixedLabelResult r;
  r.checkpoint.model = train_model(dataset.images(lab), labels,
                                   unlabeled ? &*unlabeled : nullptr, cfg);
  r.checkpoint.rng_seed = settings.seed;
  r.labeled = lab.size();
  r.unlabeled = unl.size();
  r.val_acc = evaluate_model(r.checkpoint.model, dataset, settings, "val");
  r.test_acc = evaluate_model(r.checkpoint.model, dataset, settings, "test");
  return r;
}

double evaluate_model(const AaeModel& model, const Dataset& dataset,
                      const RunSettings& settings, const std::string& part) {
  std::vector<std::string> ids;
  if (part == "all") {
    ids = dataset.ids();
  } else {
    const DatasetSplit split = split_for(dataset, settings);
    if (part == "train") {
      ids = split.train_ids;
    } else if (part == "val") {
      ids = split.val_ids;
    } else if (part == "test") {
      ids = split.test_ids;
    } else {
      fail(ErrorKind::kInput, "unknown split '" + part + "' (train, val, test or all)");
    }
  }
  const std::vector<double> p = predict_proba(model, dataset.images(ids));
  return accuracy(threshold_labels(p), dataset.labels(ids));
}

ActiveLearningRun run_with_checkpoints(const Dataset& dataset,
                                       const RunSettings& settings,
                                       const AlRunOptions& options) {
  RunSettings s = settings;
  s.oracle.mode = OracleMode::kDataset;
  ActiveLearningRun run =
      options.resume ? ActiveLearningRun::from_json(read_json_file(*options.resume), dataset)
                     : make_run(dataset, s);
  std::size_t rounds = 0;
  while (run.phase() != ActiveLearningRun::Phase::kComplete &&
         (options.max_rounds == 0 || rounds < options.max_rounds)) {
    const std::vector<std::string> queries = run.pending();
    for (const std::string& id : queries) {
      run.answer(id, oracle_label(run.oracle(), id, run.pool(), &dataset).label);
    }
    run.train_round();
    ++rounds;
    if (options.checkpoint) write_json_file(run.to_json(), *options.checkpoint);
  }
  return run;
}

}  // namespace aaeal
