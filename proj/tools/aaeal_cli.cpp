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

// Command-line front end. Everything goes through the C API.

#include <CLI11.hpp>

#include <csignal>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>

#include "aaeal/aaeal.h"

namespace {

struct RuntimeFailure {
  aaeal_status status;
};

void check(aaeal_status st) {
  if (st != AAEAL_OK) throw RuntimeFailure{st};
}

struct Common {
  std::string data;
  std::string labels;
  std::string config;
  std::string out;
  std::optional<long long> seed;
};

void add_data_flags(CLI::App* cmd, Common& c) {
  cmd->add_option("--data", c.data, "directory of PGM images")->required();
  cmd->add_option("--labels", c.labels, "labels CSV (default: DATA/labels.csv)");
}

void add_config_flags(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config, "JSON settings file");
  cmd->add_option("--seed", c.seed, "overrides the run seed");
}

class Config {
 public:
  explicit Config(const Common& c) {
    if (c.config.empty()) {
      check(aaeal_config_create(&cfg_));
    } else {
      check(aaeal_config_load(c.config.c_str(), &cfg_));
    }
    if (c.seed) {
      const std::string patch = "{\"seed\": " + std::to_string(*c.seed) + "}";
      check(aaeal_config_merge_json(cfg_, patch.c_str()));
    }
  }
  ~Config() { aaeal_config_free(cfg_); }
  Config(const Config&) = delete;
  Config& operator=(const Config&) = delete;
  aaeal_config get() const { return cfg_; }

 private:
  aaeal_config cfg_ = nullptr;
};

class Data {
 public:
  explicit Data(const Common& c) {
    const std::string labels =
        c.labels.empty() ? (std::filesystem::path(c.data) / "labels.csv").string()
                         : c.labels;
    check(aaeal_dataset_load(c.data.c_str(), labels.c_str(), &ds_));
  }
  ~Data() { aaeal_dataset_free(ds_); }
  Data(const Data&) = delete;
  Data& operator=(const Data&) = delete;
  aaeal_dataset get() const { return ds_; }

 private:
  aaeal_dataset ds_ = nullptr;
};

std::string out_file(const std::string& dir, const char* name) {
  std::filesystem::create_directories(dir);
  return (std::filesystem::path(dir) / name).string();
}

aaeal_service g_serving = nullptr;

extern "C" void on_signal(int) {
  if (g_serving != nullptr) aaeal_service_stop(g_serving);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adversarial autoencoder active learning for galaxy morphology"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(aaeal_version()));

  Common common;

  auto* synth = app.add_subcommand("synth", "generate a synthetic galaxy dataset");
  std::size_t synth_n = 2000;
  std::size_t synth_side = 16;
  double synth_p1 = 0.5;
  double synth_noise = 0.05;
  long long synth_seed = 1;
  synth->add_option("--out", common.out, "output directory")->required();
  synth->add_option("--n", synth_n, "number of images")->check(CLI::PositiveNumber);
  synth->add_option("--side", synth_side, "image side in pixels")->check(CLI::Range(8, 512));
  synth->add_option("--p1", synth_p1, "fraction of featured galaxies")->check(CLI::Range(0.0, 1.0));
  synth->add_option("--noise", synth_noise, "Gaussian noise sigma")->check(CLI::NonNegativeNumber);
  synth->add_option("--seed", synth_seed, "generator seed");

  auto* train = app.add_subcommand("train", "train on a fixed labeled fraction");
  double label_fraction = 1.0;
  add_data_flags(train, common);
  add_config_flags(train, common);
  train->add_option("--label-fraction", label_fraction,
                    "fraction of the training split that keeps its labels")
      ->check(CLI::Range(0.0, 1.0));
  train->add_option("--out", common.out, "directory for model.json")->required();

  auto* al = app.add_subcommand("al-run", "active-learning run with the dataset oracle");
  std::string resume;
  std::size_t max_rounds = 0;
  add_data_flags(al, common);
  add_config_flags(al, common);
  al->add_option("--out", common.out, "directory for report.csv and run.json")->required();
  al->add_option("--resume", resume, "run checkpoint to continue from")->check(CLI::ExistingFile);
  al->add_option("--max-rounds", max_rounds, "stop after this many rounds (0 = all)");

  auto* scaling = app.add_subcommand("scaling-exp", "accuracy against corpus/labeled ratio");
  add_data_flags(scaling, common);
  add_config_flags(scaling, common);
  scaling->add_option("--out", common.out, "directory for scaling.csv")->required();

  auto* evaluate = app.add_subcommand("evaluate", "accuracy of a saved model");
  std::string model_path;
  std::string split = "test";
  add_data_flags(evaluate, common);
  add_config_flags(evaluate, common);
  evaluate->add_option("--model", model_path, "model checkpoint")->required()->check(CLI::ExistingFile);
  evaluate->add_option("--split", split, "train, val, test or all")
      ->check(CLI::IsMember({"train", "val", "test", "all"}));

  auto* extrapolate = app.add_subcommand("extrapolate", "composed corpus accuracy");
  long long ex_a = 0;
  long long ex_n = 0;
  double ex_acc = 0.0;
  extrapolate->add_option("--a", ex_a, "labeled count")->required();
  extrapolate->add_option("--n", ex_n, "corpus size")->required();
  extrapolate->add_option("--acc-u", ex_acc, "accuracy on the unlabeled remainder")->required();

  auto* serve = app.add_subcommand("serve", "labeling service for human annotators");
  std::string addr = "127.0.0.1";
  int port = 8080;
  add_data_flags(serve, common);
  add_config_flags(serve, common);
  serve->add_option("--addr", addr, "bind address");
  serve->add_option("--port", port, "TCP port")->check(CLI::Range(0, 65535));
  serve->add_option("--out", common.out, "directory for the autosaved run.json");
  serve->add_option("--resume", resume, "run checkpoint to continue from")->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*synth) {
      aaeal_dataset ds = nullptr;
      check(aaeal_dataset_synthesize(synth_n, synth_side, synth_p1, synth_noise,
                                     static_cast<uint64_t>(synth_seed), &ds));
      const aaeal_status st = aaeal_dataset_save(ds, common.out.c_str());
      aaeal_dataset_free(ds);
      check(st);
      std::printf("wrote %zu images to %s\n", synth_n, common.out.c_str());
    } else if (*train) {
      Config cfg(common);
      Data data(common);
      aaeal_train_result r{};
      const std::string path = out_file(common.out, "model.json");
      check(aaeal_train(data.get(), cfg.get(), label_fraction, path.c_str(), &r));
      std::printf("labeled=%zu unlabeled=%zu val_acc=%.4f test_acc=%.4f model=%s\n",
                  r.labeled, r.unlabeled, r.val_acc, r.test_acc, path.c_str());
    } else if (*al) {
      Config cfg(common);
      Data data(common);
      aaeal_al_summary s{};
      const std::string report = out_file(common.out, "report.csv");
      const std::string ckpt = out_file(common.out, "run.json");
      check(aaeal_al_run(data.get(), cfg.get(), report.c_str(),
                         resume.empty() ? nullptr : resume.c_str(), ckpt.c_str(),
                         max_rounds, &s));
      std::printf("rounds=%zu labeled=%zu actions=%lld val_acc=%.4f test_acc=%.4f\n",
                  s.rounds, s.labeled, static_cast<long long>(s.actions),
                  s.final_val_acc, s.final_test_acc);
    } else if (*scaling) {
      Config cfg(common);
      Data data(common);
      std::size_t rows = 0;
      const std::string path = out_file(common.out, "scaling.csv");
      check(aaeal_scaling_experiment(data.get(), cfg.get(), path.c_str(), &rows));
      std::printf("rows=%zu csv=%s\n", rows, path.c_str());
    } else if (*evaluate) {
      Config cfg(common);
      Data data(common);
      double acc = 0.0;
      check(aaeal_evaluate(data.get(), cfg.get(), model_path.c_str(), split.c_str(), &acc));
      std::printf("%s_acc=%.6f\n", split.c_str(), acc);
    } else if (*extrapolate) {
      double acc = 0.0;
      check(aaeal_composed_accuracy(ex_a, ex_n, ex_acc, &acc));
      std::printf("%.6f\n", acc);
    } else if (*serve) {
      Data data(common);
      aaeal_service svc = nullptr;
      const std::string autosave = common.out.empty() ? "" : out_file(common.out, "run.json");
      if (!resume.empty()) {
        check(aaeal_service_resume(data.get(), resume.c_str(),
                                   autosave.empty() ? nullptr : autosave.c_str(), &svc));
      } else {
        Config cfg(common);
        if (!autosave.empty()) {
          const std::string patch = "{\"checkpoint\": \"" + autosave + "\"}";
          check(aaeal_config_merge_json(cfg.get(), patch.c_str()));
        }
        check(aaeal_service_create(data.get(), cfg.get(), &svc));
      }
      g_serving = svc;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      std::printf("listening on http://%s:%d\n", addr.c_str(), port);
      std::fflush(stdout);
      const aaeal_status st = aaeal_service_listen(svc, addr.c_str(), port);
      g_serving = nullptr;
      // Keeps labels answered since the last completed round.
      const aaeal_status saved =
          autosave.empty() ? AAEAL_OK : aaeal_service_save_checkpoint(svc, autosave.c_str());
      aaeal_service_free(svc);
      check(st);
      check(saved);
    }
  } catch (const RuntimeFailure& f) {
    std::fprintf(stderr, "error (%s): %s\n", aaeal_status_name(f.status), aaeal_last_error());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
