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

// Acceptance suite. Prints one line per criterion:
//   criterion <n> PASS|FAIL: <measurements> (<seconds>s)
// Usage: acceptance [n ...]   (no arguments runs all nine)
// Exit status is zero only when every selected criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "active_learning.hpp"
#include "aae.hpp"
#include "checkpoint.hpp"
#include "dataset.hpp"
#include "error.hpp"
#include "metrics.hpp"
#include "nn.hpp"
#include "scaling.hpp"
#include "synthetic.hpp"

namespace aaeal {
namespace {

// Tolerances and sizes.
constexpr double kGradTol = 1e-4;
constexpr double kGradStep = 1e-5;
constexpr double kFaultFloor = 1e-2;
constexpr int kGradSeeds = 20;
constexpr double kGradBudgetS = 30.0;
constexpr double kKinkMargin = 1e-3;

constexpr std::int64_t kReferenceActions = 854310;
constexpr double kActionsRelTol = 0.00004;
constexpr double kComposedTarget = 0.9550;
constexpr double kComposedTol = 1e-4;

constexpr int kSelectorInstances = 1000;
constexpr std::size_t kSelectorMaxPool = 10000;
constexpr double kSelectorBudgetS = 10.0;

constexpr int kAlSeeds = 5;
constexpr double kAlFloor = 0.80;
constexpr double kAlBudgetS = 15 * 60.0;

constexpr int kSemiSeeds = 5;
constexpr std::size_t kSemiEpochs = 100;
constexpr double kLatentMeanTol = 0.3;
constexpr double kLatentStdLo = 0.6;
constexpr double kLatentStdHi = 1.4;
constexpr double kSemiBudgetS = 20 * 60.0;

constexpr int kPoolSequences = 10000;

// Synthetic corpus shared by the desk-scale checks: 5000 training images.
SyntheticOptions desk_corpus() { return {6250, 16, 0.5, 0.05, 7}; }

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// ---------------------------------------------------------------------------

Tensor uniform(std::size_t r, std::size_t c, std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  Tensor t(r, c);
  for (double& v : t.values()) v = u(rng);
  return t;
}

// Smallest |pre-activation| over all ReLU units for the given batch. ReLU is
// not differentiable at zero, so checks are drawn away from it.
double relu_margin(const Mlp& net, const Tensor& x) {
  double margin = 1e300;
  std::vector<double> cur(x.values().begin(), x.values().end());
  std::size_t width = x.cols();
  for (const DenseLayer& l : net.layers()) {
    std::vector<double> next(x.rows() * l.fan_out());
    for (std::size_t r = 0; r < x.rows(); ++r) {
      for (std::size_t o = 0; o < l.fan_out(); ++o) {
        double z = l.bias[o];
        for (std::size_t i = 0; i < width; ++i) z += l.weights.at(o, i) * cur[r * width + i];
        if (l.activation == Activation::kRelu) {
          margin = std::min(margin, std::fabs(z));
          z = std::max(z, 0.0);
        } else if (l.activation == Activation::kSigmoid) {
          z = 1.0 / (1.0 + std::exp(-z));
        }
        next[r * l.fan_out() + o] = z;
      }
    }
    cur = std::move(next);
    width = l.fan_out();
  }
  return margin;
}

Outcome gradient_fidelity() {
  struct Combo {
    Activation hidden, output;
    LossKind loss;
  };
  std::vector<Combo> combos;
  for (Activation h : {Activation::kLinear, Activation::kRelu, Activation::kSigmoid}) {
    for (Activation o : {Activation::kLinear, Activation::kRelu, Activation::kSigmoid}) {
      combos.push_back({h, o, LossKind::kMse});
    }
    combos.push_back({h, Activation::kSigmoid, LossKind::kBce});
  }
  double worst_clean = 0.0;
  double weakest_fault = 1e300;
  int checks = 0;
  int faults = 0;
  for (const Combo& c : combos) {
    for (int seed = 1; seed <= kGradSeeds; ++seed) {
      std::mt19937_64 rng(1000 * static_cast<unsigned>(seed) + checks);
      std::uniform_int_distribution<std::size_t> width(2, 7);
      const std::size_t dims[] = {width(rng), width(rng), width(rng), width(rng)};
      Mlp net;
      Tensor x;
      do {
        std::vector<DenseLayer> layers =
            Mlp::create(dims, c.hidden, c.output, rng).layers();
        for (DenseLayer& l : layers) {
          const Tensor b = uniform(1, l.fan_out(), rng, -0.5, 0.5);
          l.bias = Tensor::vector({b.values().begin(), b.values().end()});
        }
        net = Mlp(std::move(layers));
        x = uniform(5, dims[0], rng, -1.0, 1.0);
      } while (relu_margin(net, x) < kKinkMargin);
      Tensor t = uniform(5, dims[3], rng, 0.0, 1.0);
      if (c.loss == LossKind::kBce) {
        for (double& v : t.values()) v = v < 0.5 ? 0.0 : 1.0;
      }
      worst_clean = std::max(worst_clean, gradient_check(net, c.loss, x, t, kGradStep));

      // Scale one entry by 1.1: the largest-magnitude entry of a randomly
      // chosen parameter tensor that is not identically zero.
      const std::size_t first = rng() % (2 * net.layers().size());
      bool injected = false;
      const double fault = gradient_check(
          net, c.loss, x, t, kGradStep, [&](std::vector<Tensor>& g) {
            for (std::size_t k = 0; k < g.size(); ++k) {
              Tensor& cand = g[(first + k) % g.size()];
              auto it = std::max_element(cand.values().begin(), cand.values().end(),
                                         [](double a, double b) {
                                           return std::fabs(a) < std::fabs(b);
                                         });
              if (std::fabs(*it) > 1e-6) {
                *it *= 1.1;
                injected = true;
                return;
              }
            }
          });
      if (injected) {
        weakest_fault = std::min(weakest_fault, fault);
        ++faults;
      }
      ++checks;
    }
  }
  // Networks whose gradient is identically zero have nothing to corrupt.
  return {worst_clean <= kGradTol && weakest_fault >= kFaultFloor && faults > 0,
          fmt("%d checks, worst clean rel err %.2e (<= %.0e); %d faults injected, "
              "weakest flagged at %.2e (>= %.0e)",
              checks, worst_clean, kGradTol, faults, weakest_fault, kFaultFloor)};
}

// ---------------------------------------------------------------------------

Outcome schedule_reproduction() {
  const AlSchedule s = build_schedule(200000);
  std::vector<std::size_t> expect{8000};
  expect.insert(expect.end(), 6, 2000);
  std::size_t total = 0;
  for (std::size_t q : s.quotas) total += q;
  std::string quotas;
  for (std::size_t q : s.quotas) quotas += (quotas.empty() ? "" : ",") + std::to_string(q);
  return {s.quotas == expect && total == 20000 && s.cap() == 20000,
          "quotas [" + quotas + "], cumulative " + std::to_string(total) + " of 200000"};
}

// ---------------------------------------------------------------------------

Outcome accounting_reproduction() {
  const std::int64_t actions = markup_actions(20340);
  const double rel =
      std::fabs(static_cast<double>(actions - kReferenceActions)) / static_cast<double>(kReferenceActions);
  const double composed = composed_accuracy({20340, 226124, 0.95057});
  const double r = ratio_r(130000, 20000);
  const bool pass = actions == 854280 && rel <= kActionsRelTol &&
                    std::fabs(composed - kComposedTarget) <= kComposedTol && r == 6.5;
  return {pass, fmt("actions %lld (rel diff %.5f%% vs %lld), composed %.6f, R %.4g",
                    static_cast<long long>(actions), 100.0 * rel,
                    static_cast<long long>(kReferenceActions), composed, r)};
}

// ---------------------------------------------------------------------------

std::string pad_id(std::size_t i) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "g%06zu", i);
  return buf;
}

Outcome selector_correctness() {
  std::mt19937_64 rng(4242);
  int mismatches = 0;
  std::size_t largest = 0;
  for (int inst = 0; inst < kSelectorInstances; ++inst) {
    const std::size_t n = 1 + rng() % kSelectorMaxPool;
    largest = std::max(largest, n);
    const std::size_t k = 1 + rng() % n;
    // Coarse grids on some instances force many exact ties.
    const int grid = inst % 3 == 0 ? 20 : 0;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::map<std::string, double> preds;
    std::vector<std::string> ids(n);
    for (std::size_t i = 0; i < n; ++i) ids[i] = pad_id(i);
    std::shuffle(ids.begin(), ids.end(), rng);
    for (const std::string& id : ids) {
      double p = u(rng);
      if (grid > 0) p = std::round(p * grid) / grid;
      preds[id] = p;
    }
    std::vector<std::pair<double, std::string>> all;
    all.reserve(n);
    for (const auto& [id, p] : preds) all.emplace_back(std::fabs(p - 0.5), id);
    std::sort(all.begin(), all.end());
    std::vector<std::string> expect;
    for (std::size_t i = 0; i < k; ++i) expect.push_back(all[i].second);
    std::mt19937_64 unused(0);
    if (select_queries(preds, k, Strategy::kUncertainty, unused) != expect) ++mismatches;
  }
  return {mismatches == 0, fmt("%d instances (pool up to %zu), %d mismatches",
                               kSelectorInstances, largest, mismatches)};
}

// ---------------------------------------------------------------------------

Outcome al_benefit() {
  const Dataset ds = generate_synthetic(desk_corpus()).dataset;
  const DatasetSplit split = make_splits(ds.ids(), 0.8, 0.1, 0.1, 1);
  const AlSchedule schedule = build_schedule(split.train_ids.size());
  const TrainConfig train;
  double mean[2] = {0.0, 0.0};
  std::string per_seed;
  for (int si = 0; si < 2; ++si) {
    const Strategy st = si == 0 ? Strategy::kUncertainty : Strategy::kRandom;
    for (int seed = 1; seed <= kAlSeeds; ++seed) {
      const auto reports = run_active_learning(ds, split, schedule, train, st,
                                               static_cast<std::uint64_t>(seed), Oracle{});
      mean[si] += reports.back().test_acc / kAlSeeds;
    }
  }
  const bool pass = mean[0] > mean[1] && mean[0] > kAlFloor && mean[1] > kAlFloor;
  return {pass, fmt("n_train %zu, labels %zu, %d seeds: uncertainty %.4f vs random %.4f "
                    "(both > %.2f)",
                    split.train_ids.size(), schedule.cap(), kAlSeeds, mean[0], mean[1],
                    kAlFloor)};
}

// ---------------------------------------------------------------------------

struct LatentStats {
  double worst_abs_mean = 0.0;
  double min_std = 1e300;
  double max_std = 0.0;
};

LatentStats latent_stats(const Tensor& z) {
  LatentStats s;
  const double n = static_cast<double>(z.rows());
  for (std::size_t d = 0; d < z.cols(); ++d) {
    double m = 0.0;
    for (std::size_t i = 0; i < z.rows(); ++i) m += z.at(i, d);
    m /= n;
    double v = 0.0;
    for (std::size_t i = 0; i < z.rows(); ++i) v += (z.at(i, d) - m) * (z.at(i, d) - m);
    const double sd = std::sqrt(v / (n - 1.0));
    s.worst_abs_mean = std::max(s.worst_abs_mean, std::fabs(m));
    s.min_std = std::min(s.min_std, sd);
    s.max_std = std::max(s.max_std, sd);
  }
  return s;
}

Outcome semi_supervised_effect() {
  const Dataset ds = generate_synthetic(desk_corpus()).dataset;
  const DatasetSplit split = make_splits(ds.ids(), 0.8, 0.1, 0.1, 1);
  const std::size_t n_labeled = split.train_ids.size() / 50;  // 2%
  const std::size_t n_unlabeled = 10 * n_labeled;
  const Tensor x_test = ds.images(split.test_ids);
  const std::vector<int> y_test = ds.labels(split.test_ids);
  const Tensor x_train = ds.images(split.train_ids);

  double full_mean = 0.0, ablation_mean = 0.0;
  LatentStats worst;
  for (int seed = 1; seed <= kSemiSeeds; ++seed) {
    std::vector<std::string> ids = split.train_ids;
    std::shuffle(ids.begin(), ids.end(), std::mt19937_64(static_cast<std::uint64_t>(seed)));
    const std::vector<std::string> lab(ids.begin(), ids.begin() + n_labeled);
    const std::vector<std::string> unl(ids.begin() + n_labeled,
                                       ids.begin() + n_labeled + n_unlabeled);
    std::vector<double> y;
    for (int v : ds.labels(lab)) y.push_back(v);
    const Tensor y_lab = Tensor::from(y.size(), 1, y);
    const Tensor x_lab = ds.images(lab);
    const Tensor x_unl = ds.images(unl);

    TrainConfig full;
    full.epochs = kSemiEpochs;
    full.seed = static_cast<std::uint64_t>(seed);
    TrainConfig ablation = full;
    ablation.reconstruction_phase = false;
    ablation.adversarial_phase = false;

    const AaeModel m_full = train_model(x_lab, y_lab, &x_unl, full);
    const AaeModel m_abl = train_model(x_lab, y_lab, &x_unl, ablation);
    full_mean += accuracy(threshold_labels(predict_proba(m_full, x_test)), y_test) / kSemiSeeds;
    ablation_mean +=
        accuracy(threshold_labels(predict_proba(m_abl, x_test)), y_test) / kSemiSeeds;
    const LatentStats s = latent_stats(encode(m_full, x_train));
    worst.worst_abs_mean = std::max(worst.worst_abs_mean, s.worst_abs_mean);
    worst.min_std = std::min(worst.min_std, s.min_std);
    worst.max_std = std::max(worst.max_std, s.max_std);
  }
  const bool margin_ok = full_mean - ablation_mean >= 0.0;
  const bool prior_ok = worst.worst_abs_mean <= kLatentMeanTol &&
                        worst.min_std >= kLatentStdLo && worst.max_std <= kLatentStdHi;
  return {margin_ok && prior_ok,
          fmt("%zu labeled + %zu unlabeled, %d seeds: full %.4f vs ablation %.4f "
              "(margin %s); latent worst |mean| %.3f (<= %.1f), std range [%.3f, %.3f] "
              "(within [%.1f, %.1f]: %s)",
              n_labeled, n_unlabeled, kSemiSeeds, full_mean, ablation_mean,
              margin_ok ? "ok" : "negative", worst.worst_abs_mean, kLatentMeanTol,
              worst.min_std, worst.max_std, kLatentStdLo, kLatentStdHi,
              prior_ok ? "ok" : "no")};
}

// ---------------------------------------------------------------------------

void answer_from_dataset(ActiveLearningRun& run) {
  const std::string id = run.pending().front();
  run.answer(id, run.dataset().label(run.dataset().index_of(id)));
}

Outcome determinism_and_resume() {
  const Dataset ds = generate_synthetic({1250, 16, 0.5, 0.05, 11}).dataset;
  const DatasetSplit split = make_splits(ds.ids(), 0.8, 0.1, 0.1, 1);
  const AlSchedule schedule = build_schedule(split.train_ids.size());
  TrainConfig train;
  train.epochs = 2;
  auto fresh = [&](std::uint64_t seed) {
    return ActiveLearningRun(ds, split, schedule, train, Strategy::kUncertainty, seed,
                             Oracle{});
  };

  ActiveLearningRun a = fresh(3);
  complete_with_dataset_oracle(a);
  ActiveLearningRun b = fresh(3);
  complete_with_dataset_oracle(b);
  const std::string csv_a = format_report_csv(a.reports());
  const bool identical = csv_a == format_report_csv(b.reports());

  // Interrupt in the middle of round 3's labeling, persist, reload, finish.
  ActiveLearningRun c = fresh(3);
  while (c.round() < 3) {
    if (c.phase() == ActiveLearningRun::Phase::kAwaitingLabels) {
      answer_from_dataset(c);
    } else {
      c.train_round();
    }
  }
  const std::size_t half = c.quota_remaining() / 2;
  for (std::size_t i = 0; i < half; ++i) answer_from_dataset(c);
  const auto path = std::filesystem::temp_directory_path() / "aaeal_acceptance_resume.json";
  write_json_file(c.to_json(), path);
  ActiveLearningRun resumed = ActiveLearningRun::from_json(read_json_file(path), ds);
  std::filesystem::remove(path);
  complete_with_dataset_oracle(resumed);
  const bool resumes = format_report_csv(resumed.reports()) == csv_a;

  return {identical && resumes,
          fmt("%zu rounds; identical seeds give identical CSV: %s; resume after %zu of "
              "round 3's labels reproduces remaining reports: %s",
              a.reports().size(), identical ? "yes" : "no", half, resumes ? "yes" : "no")};
}

// ---------------------------------------------------------------------------

Outcome pool_invariants() {
  const Dataset ds = generate_synthetic({64, 8, 0.5, 0.05, 2}).dataset;
  const Oracle oracle;
  std::mt19937_64 rng(8);
  long violations = 0;
  long operations = 0;
  long rejected = 0;

  for (int seq = 0; seq < kPoolSequences; ++seq) {
    std::vector<std::string> ids = ds.ids();
    std::shuffle(ids.begin(), ids.end(), rng);
    const std::size_t n = 1 + rng() % ids.size();
    const std::vector<std::string> pool_ids(ids.begin(), ids.begin() + n);
    const std::vector<std::string> outsiders(ids.begin() + n, ids.end());
    PoolState pool(pool_ids);
    std::size_t last_count = 0;

    auto check = [&] {
      std::set<std::string> seen;
      bool ok = true;
      for (const auto& [id, y] : pool.labeled()) {
        ok &= seen.insert(id).second && (y == 0 || y == 1);
      }
      for (const std::string& id : pool.unlabeled()) ok &= seen.insert(id).second;
      ok &= seen == std::set<std::string>(pool_ids.begin(), pool_ids.end());
      ok &= pool.labeled().size() >= last_count;
      ok &= pool.actions_spent() ==
            oracle.votes_per_label * static_cast<std::int64_t>(pool.labeled().size());
      last_count = pool.labeled().size();
      if (!ok) ++violations;
    };
    // A rejected operation must leave the state untouched.
    auto expect_rejected = [&](const std::function<void()>& op) {
      const PoolState before = pool;
      try {
        op();
        ++violations;
      } catch (const Error&) {
        ++rejected;
      }
      if (!(pool == before)) ++violations;
    };

    const int steps = 1 + static_cast<int>(rng() % 40);
    for (int s = 0; s < steps; ++s) {
      ++operations;
      switch (rng() % 5) {
        case 0:
        case 1: {
          if (pool.unlabeled().empty()) break;
          auto it = pool.unlabeled().begin();
          std::advance(it, rng() % pool.unlabeled().size());
          const std::string id = *it;
          const LabelOutcome out = oracle_label(oracle, id, pool, &ds);
          pool.apply(id, out.label, out.cost);
          break;
        }
        case 2: {
          if (pool.labeled().empty()) break;
          auto it = pool.labeled().begin();
          std::advance(it, rng() % pool.labeled().size());
          const std::string id = it->first;
          expect_rejected([&] {
            const LabelOutcome out = oracle_label(oracle, id, pool, &ds);
            pool.apply(id, out.label, out.cost);
          });
          break;
        }
        case 3: {
          const std::string id =
              outsiders.empty() ? std::string("ghost") : outsiders[rng() % outsiders.size()];
          expect_rejected([&] {
            const LabelOutcome out = oracle_label(oracle, id, pool, &ds);
            pool.apply(id, out.label, out.cost);
          });
          break;
        }
        default: {
          if (!pool.unlabeled().empty()) {
            const std::string id = *pool.unlabeled().begin();
            expect_rejected([&] { pool.apply(id, 2, oracle.votes_per_label); });
          }
          const PoolState again =
              PoolState::restore(pool_ids, pool.labeled(), pool.actions_spent());
          if (!(again == pool)) ++violations;
          break;
        }
      }
      check();
    }
  }
  return {violations == 0,
          fmt("%d sequences, %ld operations (%ld correctly rejected), %ld violations",
              kPoolSequences, operations, rejected, violations)};
}

// ---------------------------------------------------------------------------

Outcome scaling_harness() {
  // 13000 training images cover the largest pool.
  const Dataset ds = generate_synthetic({16250, 16, 0.5, 0.05, 9}).dataset;
  const DatasetSplit split = make_splits(ds.ids(), 0.8, 0.1, 0.1, 1);
  const ScalingConfig cfg;  // A in {700, 2000}, N in {3000, 5000, ..., 13000}
  TrainConfig train;
  train.epochs = 1;
  train.arch.latent_dim = 4;
  train.arch.encoder_hidden = {32};
  train.arch.discriminator_hidden = {16};
  train.arch.classifier_hidden = {8};
  const std::vector<ScalingRow> rows =
      run_scaling_experiment(cfg, ds, split, train, Strategy::kUncertainty, Oracle{});

  std::set<std::tuple<std::size_t, std::size_t, std::uint64_t>> keys;
  bool ratios_exact = true;
  for (const ScalingRow& r : rows) {
    keys.emplace(r.pool_size, r.budget, r.seed);
    ratios_exact &= r.ratio == static_cast<double>(r.pool_size) / static_cast<double>(r.budget);
  }
  const std::size_t expected =
      cfg.budgets.size() * cfg.pool_sizes.size() * cfg.seeds.size();
  const bool complete = rows.size() == expected && keys.size() == expected;

  const auto path = std::filesystem::temp_directory_path() / "aaeal_acceptance_scaling.csv";
  emit_scaling_csv(rows, path);
  std::ifstream in(path, std::ios::binary);
  std::stringstream text;
  text << in.rdbuf();
  std::filesystem::remove(path);
  const bool round_trip = parse_scaling_csv(text.str()) == rows &&
                          format_scaling_csv(parse_scaling_csv(text.str())) == text.str();

  double lo = 1.0, hi = 0.0;
  for (const ScalingRow& r : rows) {
    lo = std::min(lo, r.final_test_acc);
    hi = std::max(hi, r.final_test_acc);
  }
  return {complete && ratios_exact && round_trip,
          fmt("%zu of %zu rows, R exact: %s, CSV round trip: %s, accuracy range "
              "[%.3f, %.3f]",
              rows.size(), expected, ratios_exact ? "yes" : "no", round_trip ? "yes" : "no",
              lo, hi)};
}

// ---------------------------------------------------------------------------

struct Criterion {
  int number;
  std::function<Outcome()> run;
  double budget_s;  // 0: no runtime requirement
};

}  // namespace
}  // namespace aaeal

int main(int argc, char** argv) {
  using namespace aaeal;
  const std::vector<Criterion> all = {
      {1, gradient_fidelity, kGradBudgetS},
      {2, schedule_reproduction, 0},
      {3, accounting_reproduction, 0},
      {4, selector_correctness, kSelectorBudgetS},
      {5, al_benefit, kAlBudgetS},
      {6, semi_supervised_effect, kSemiBudgetS},
      {7, determinism_and_resume, 0},
      {8, pool_invariants, 0},
      {9, scaling_harness, 0},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) {
    const int n = std::atoi(argv[i]);
    if (n < 1 || n > static_cast<int>(all.size())) {
      std::fprintf(stderr, "unknown criterion '%s'\n", argv[i]);
      return 2;
    }
    selected.insert(n);
  }
  bool all_pass = true;
  for (const Criterion& c : all) {
    if (!selected.empty() && selected.count(c.number) == 0) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0 && secs > c.budget_s) {
      out.pass = false;
      out.detail += fmt("; over the %.0fs budget", c.budget_s);
    }
    std::printf("criterion %d %s: %s (%.1fs)\n", c.number, out.pass ? "PASS" : "FAIL",
                out.detail.c_str(), secs);
    std::fflush(stdout);
    all_pass &= out.pass;
  }
  return all_pass ? 0 : 1;
}
