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

#include "aaeal/aaeal.h"

#include <cstring>
#include <memory>
#include <string>

#include "checkpoint.hpp"
#include "config.hpp"
#include "dataset.hpp"
#include "error.hpp"
#include "metrics.hpp"
#include "scaling.hpp"
#include "service.hpp"
#include "synthetic.hpp"
#include "workflows.hpp"

struct aaeal_config_s {
  aaeal::RunSettings settings;
};

struct aaeal_dataset_s {
  std::shared_ptr<const aaeal::Dataset> data;
};

struct aaeal_service_s {
  std::shared_ptr<const aaeal::Dataset> data;
  std::unique_ptr<aaeal::LabelingService> service;
};

namespace {

thread_local std::string g_last_error;

aaeal_status to_status(aaeal::ErrorKind kind) {
  using aaeal::ErrorKind;
  switch (kind) {
    case ErrorKind::kShape: return AAEAL_ERR_SHAPE;
    case ErrorKind::kState: return AAEAL_ERR_STATE;
    case ErrorKind::kInput: return AAEAL_ERR_INPUT;
    case ErrorKind::kFormat: return AAEAL_ERR_FORMAT;
    case ErrorKind::kConfig: return AAEAL_ERR_CONFIG;
    case ErrorKind::kIo: return AAEAL_ERR_IO;
    case ErrorKind::kConflict: return AAEAL_ERR_CONFLICT;
    case ErrorKind::kValidation: return AAEAL_ERR_VALIDATION;
    case ErrorKind::kNumeric: return AAEAL_ERR_NUMERIC;
  }
  return AAEAL_ERR_INTERNAL;
}

template <typename Fn>
aaeal_status guarded(Fn&& fn) {
  g_last_error.clear();
  try {
    fn();
    return AAEAL_OK;
  } catch (const aaeal::Error& e) {
    g_last_error = e.what();
    return to_status(e.kind());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return AAEAL_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return AAEAL_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) aaeal::fail(aaeal::ErrorKind::kInput, std::string(what) + " is NULL");
}

}  // namespace

extern "C" {

const char* aaeal_version(void) { return "0.1.0"; }

const char* aaeal_status_name(aaeal_status status) {
  switch (status) {
    case AAEAL_OK: return "ok";
    case AAEAL_ERR_INPUT: return "input error";
    case AAEAL_ERR_SHAPE: return "shape error";
    case AAEAL_ERR_STATE: return "state error";
    case AAEAL_ERR_FORMAT: return "format error";
    case AAEAL_ERR_CONFIG: return "config error";
    case AAEAL_ERR_IO: return "i/o error";
    case AAEAL_ERR_CONFLICT: return "conflict";
    case AAEAL_ERR_VALIDATION: return "validation error";
    case AAEAL_ERR_NUMERIC: return "numeric error";
    case AAEAL_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* aaeal_last_error(void) { return g_last_error.c_str(); }

aaeal_status aaeal_config_create(aaeal_config* out) {
  return guarded([&] {
    require(out, "out");
    *out = new aaeal_config_s{};
  });
}

aaeal_status aaeal_config_load(const char* path, aaeal_config* out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new aaeal_config_s{aaeal::load_settings(path)};
  });
}

aaeal_status aaeal_config_merge_json(aaeal_config cfg, const char* json_text) {
  return guarded([&] {
    require(cfg, "config");
    require(json_text, "json_text");
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
      aaeal::fail(aaeal::ErrorKind::kConfig, std::string("config JSON: ") + e.what());
    }
    cfg->settings = aaeal::settings_from_json(doc, cfg->settings);
  });
}

aaeal_status aaeal_config_to_json(aaeal_config cfg, char* buf, size_t capacity,
                                  size_t* needed) {
  return guarded([&] {
    require(cfg, "config");
    const std::string text = aaeal::to_json(cfg->settings).dump(2);
    if (needed != nullptr) *needed = text.size() + 1;
    if (buf != nullptr) {
      if (capacity < text.size() + 1) {
        aaeal::fail(aaeal::ErrorKind::kInput, "buffer too small for config JSON");
      }
      std::memcpy(buf, text.c_str(), text.size() + 1);
    }
  });
}

void aaeal_config_free(aaeal_config cfg) { delete cfg; }

aaeal_status aaeal_dataset_load(const char* image_dir, const char* labels_csv,
                                aaeal_dataset* out) {
  return guarded([&] {
    require(image_dir, "image_dir");
    require(labels_csv, "labels_csv");
    require(out, "out");
    *out = new aaeal_dataset_s{std::make_shared<const aaeal::Dataset>(
        aaeal::load_dataset(image_dir, labels_csv))};
  });
}

aaeal_status aaeal_dataset_synthesize(size_t n, size_t side, double p_class1,
                                      double noise_sigma, uint64_t seed,
                                      aaeal_dataset* out) {
  return guarded([&] {
    require(out, "out");
    aaeal::SyntheticOptions opts{n, side, p_class1, noise_sigma, seed};
    *out = new aaeal_dataset_s{std::make_shared<const aaeal::Dataset>(
        aaeal::generate_synthetic(opts).dataset)};
  });
}

aaeal_status aaeal_dataset_save(aaeal_dataset ds, const char* dir) {
  return guarded([&] {
    require(ds, "dataset");
    require(dir, "dir");
    aaeal::save_dataset(*ds->data, dir);
  });
}

size_t aaeal_dataset_size(aaeal_dataset ds) { return ds ? ds->data->size() : 0; }

void aaeal_dataset_free(aaeal_dataset ds) { delete ds; }

aaeal_status aaeal_train(aaeal_dataset ds, aaeal_config cfg, double label_fraction,
                         const char* model_path, aaeal_train_result* out) {
  return guarded([&] {
    require(ds, "dataset");
    require(cfg, "config");
    const auto r = aaeal::train_fixed_labels(*ds->data, cfg->settings, label_fraction);
    if (model_path != nullptr) aaeal::save_model(r.checkpoint, model_path);
    if (out != nullptr) *out = {r.labeled, r.unlabeled, r.val_acc, r.test_acc};
  });
}

aaeal_status aaeal_evaluate(aaeal_dataset ds, aaeal_config cfg,
                            const char* model_path, const char* split,
                            double* accuracy) {
  return guarded([&] {
    require(ds, "dataset");
    require(cfg, "config");
    require(model_path, "model_path");
    require(accuracy, "accuracy");
    const aaeal::ModelCheckpoint ckpt = aaeal::load_model(model_path);
    *accuracy = aaeal::evaluate_model(ckpt.model, *ds->data, cfg->settings,
                                      split != nullptr ? split : "test");
  });
}

aaeal_status aaeal_al_run(aaeal_dataset ds, aaeal_config cfg,
                          const char* report_csv_path, const char* resume_path,
                          const char* checkpoint_path, size_t max_rounds,
                          aaeal_al_summary* out) {
  return guarded([&] {
    require(ds, "dataset");
    require(cfg, "config");
    aaeal::AlRunOptions opts;
    if (resume_path != nullptr) opts.resume = resume_path;
    if (checkpoint_path != nullptr) opts.checkpoint = checkpoint_path;
    opts.max_rounds = max_rounds;
    const aaeal::ActiveLearningRun run =
        aaeal::run_with_checkpoints(*ds->data, cfg->settings, opts);
    if (report_csv_path != nullptr && !run.reports().empty()) {
      aaeal::emit_report_csv(run.reports(), report_csv_path);
    }
    if (out != nullptr) {
      *out = aaeal_al_summary{};
      out->rounds = run.reports().size();
      out->labeled = run.pool().labeled().size();
      out->actions = run.pool().actions_spent();
      if (!run.reports().empty()) {
        out->final_val_acc = run.reports().back().val_acc;
        out->final_test_acc = run.reports().back().test_acc;
        out->final_unlabeled_acc = run.reports().back().unlabeled_acc;
      }
    }
  });
}

aaeal_status aaeal_scaling_experiment(aaeal_dataset ds, aaeal_config cfg,
                                      const char* csv_path, size_t* rows) {
  return guarded([&] {
    require(ds, "dataset");
    require(cfg, "config");
    const aaeal::RunSettings& s = cfg->settings;
    aaeal::Oracle oracle = s.oracle;
    oracle.mode = aaeal::OracleMode::kDataset;
    const auto table = aaeal::run_scaling_experiment(
        s.scaling, *ds->data, aaeal::split_for(*ds->data, s), s.train, s.strategy,
        oracle, s.schedule);
    if (csv_path != nullptr) aaeal::emit_scaling_csv(table, csv_path);
    if (rows != nullptr) *rows = table.size();
  });
}

aaeal_status aaeal_markup_actions(int64_t n_labeled, int64_t votes_per_label,
                                  int64_t* out) {
  return guarded([&] {
    require(out, "out");
    *out = aaeal::markup_actions(n_labeled, votes_per_label);
  });
}

aaeal_status aaeal_composed_accuracy(int64_t labeled, int64_t corpus, double acc_u,
                                     double* out) {
  return guarded([&] {
    require(out, "out");
    *out = aaeal::composed_accuracy({labeled, corpus, acc_u});
  });
}

aaeal_status aaeal_ratio_r(double corpus, double labeled, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = aaeal::ratio_r(corpus, labeled);
  });
}

aaeal_status aaeal_service_create(aaeal_dataset ds, aaeal_config cfg,
                                  aaeal_service* out) {
  return guarded([&] {
    require(ds, "dataset");
    require(cfg, "config");
    require(out, "out");
    auto handle = std::make_unique<aaeal_service_s>();
    handle->data = ds->data;
    handle->service = std::make_unique<aaeal::LabelingService>(*handle->data, cfg->settings);
    *out = handle.release();
  });
}

aaeal_status aaeal_service_resume(aaeal_dataset ds, const char* checkpoint_path,
                                  const char* autosave_path, aaeal_service* out) {
  return guarded([&] {
    require(ds, "dataset");
    require(checkpoint_path, "checkpoint_path");
    require(out, "out");
    auto handle = std::make_unique<aaeal_service_s>();
    handle->data = ds->data;
    handle->service = aaeal::LabelingService::from_checkpoint(
        *handle->data, checkpoint_path, autosave_path ? autosave_path : "");
    *out = handle.release();
  });
}

aaeal_status aaeal_service_listen(aaeal_service svc, const char* host, int port) {
  return guarded([&] {
    require(svc, "service");
    require(host, "host");
    if (!svc->service->listen(host, port)) {
      aaeal::fail(aaeal::ErrorKind::kIo, "cannot listen on " + std::string(host) + ":" +
                                             std::to_string(port));
    }
  });
}

aaeal_status aaeal_service_stop(aaeal_service svc) {
  return guarded([&] {
    require(svc, "service");
    svc->service->stop();
  });
}

aaeal_status aaeal_service_save_checkpoint(aaeal_service svc, const char* path) {
  return guarded([&] {
    require(svc, "service");
    require(path, "path");
    svc->service->save_checkpoint(path);
  });
}

void aaeal_service_free(aaeal_service svc) { delete svc; }

}  // extern "C"
