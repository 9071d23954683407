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

#include "service.hpp"

#include <cmath>
#include <iostream>

#include "checkpoint.hpp"
#include "error.hpp"
#include "httplib.h"
#include "metrics.hpp"

namespace aaeal {

namespace {

using nlohmann::json;

int http_status(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kValidation: return 400;
    case ErrorKind::kInput: return 404;
    case ErrorKind::kConflict:
    case ErrorKind::kState: return 409;
    default: return 500;
  }
}

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& message) {
  send_json(res, status, {{"error", message}});
}

std::string pixel_bytes(const ImageRecord& img) {
  std::string raw;
  raw.reserve(img.pixels.size());
  for (double v : img.pixels) {
    raw.push_back(static_cast<char>(static_cast<unsigned char>(std::lround(v * 255.0))));
  }
  return raw;
}

}  // namespace

ActiveLearningRun make_run(const Dataset& dataset, const RunSettings& s) {
  const DatasetSplit split =
      make_splits(dataset.ids(), s.split.train, s.split.val, s.split.test, s.split.seed);
  const AlSchedule schedule =
      build_schedule(split.train_ids.size(), s.schedule.seed_frac,
                     s.schedule.step_frac, s.schedule.cap_frac);
  return ActiveLearningRun(dataset, split, schedule, s.train, s.strategy, s.seed,
                           s.oracle);
}

LabelingService::LabelingService(const Dataset& dataset, const RunSettings& settings)
    : LabelingService(dataset,
                      [&] {
                        RunSettings human = settings;
                        human.oracle.mode = OracleMode::kHuman;
                        return make_run(dataset, human);
                      }(),
                      settings.checkpoint_path) {}

LabelingService::LabelingService(const Dataset& dataset, ActiveLearningRun run,
                                 std::string checkpoint_path)
    : dataset_(&dataset),
      run_(std::move(run)),
      checkpoint_path_(std::move(checkpoint_path)) {
  build_routes();
  std::unique_lock lock(mu_);
  if (run_.phase() == ActiveLearningRun::Phase::kReadyToTrain) start_training_locked();
}

LabelingService::~LabelingService() {
  stop();
  wait_until_idle();
  if (worker_.joinable()) worker_.join();
}

json LabelingService::status() const {
  std::shared_lock lock(mu_);
  const auto& reports = run_.reports();
  const bool complete = run_.phase() == ActiveLearningRun::Phase::kComplete;
  json doc = {{"round", run_.round()},
              {"labeled", run_.pool().labeled().size()},
              {"unlabeled", run_.pool().unlabeled().size()},
              {"quota_remaining", run_.quota_remaining()},
              {"actions_spent", run_.pool().actions_spent()},
              {"last_val_acc", reports.empty() ? json() : json(reports.back().val_acc)},
              {"last_test_acc", reports.empty() ? json() : json(reports.back().test_acc)},
              {"awaiting_labels",
               !training_ && run_.phase() == ActiveLearningRun::Phase::kAwaitingLabels},
              {"complete", complete}};
  if (!last_training_error_.empty()) doc["error"] = last_training_error_;
  return doc;
}

json LabelingService::queries(std::size_t limit) const {
  std::shared_lock lock(mu_);
  if (training_) fail(ErrorKind::kConflict, "retraining in progress");
  if (run_.phase() != ActiveLearningRun::Phase::kAwaitingLabels) {
    fail(ErrorKind::kConflict, "no active labeling round");
  }
  json out = json::array();
  for (const std::string& id : run_.pending()) {
    if (out.size() >= limit) break;
    const ImageRecord& img = dataset_->image(dataset_->index_of(id));
    out.push_back({{"id", id},
                   {"width", img.width},
                   {"height", img.height},
                   {"pixels", httplib::detail::base64_encode(pixel_bytes(img))}});
  }
  return out;
}

json LabelingService::submit(const std::string& id, int label) {
  std::unique_lock lock(mu_);
  if (label != 0 && label != 1) fail(ErrorKind::kValidation, "label must be 0 or 1");
  if (training_) fail(ErrorKind::kConflict, "retraining in progress");
  run_.answer(id, label);
  const std::size_t remaining = run_.quota_remaining();
  if (run_.phase() == ActiveLearningRun::Phase::kReadyToTrain) start_training_locked();
  return {{"accepted", true}, {"quota_remaining", remaining}};
}

std::string LabelingService::report_csv() const {
  std::shared_lock lock(mu_);
  if (run_.reports().empty()) return std::string(kReportCsvHeader) + "\n";
  return format_report_csv(run_.reports());
}

bool LabelingService::training() const {
  std::shared_lock lock(mu_);
  return training_;
}

void LabelingService::wait_until_idle() const {
  std::unique_lock lock(mu_);
  idle_cv_.wait(lock, [&] { return !training_; });
}

void LabelingService::start_training_locked() {
  if (worker_.joinable()) worker_.join();
  training_ = true;
  last_training_error_.clear();
  ActiveLearningRun work = run_;
  worker_ = std::thread([this, work = std::move(work)]() mutable {
    std::string error;
    try {
      work.train_round();
    } catch (const std::exception& e) {
      error = e.what();
    }
    std::unique_lock lock(mu_);
    if (error.empty()) {
      run_ = std::move(work);
      try {
        autosave_locked();
      } catch (const std::exception& e) {
        error = std::string("autosave failed: ") + e.what();
      }
    }
    last_training_error_ = error;
    training_ = false;
    idle_cv_.notify_all();
  });
}

void LabelingService::autosave_locked() const {
  if (!checkpoint_path_.empty()) write_json_file(run_.to_json(), checkpoint_path_);
}

void LabelingService::save_checkpoint(const std::filesystem::path& path) const {
  std::shared_lock lock(mu_);
  write_json_file(run_.to_json(), path);
}

std::unique_ptr<LabelingService> LabelingService::from_checkpoint(
    const Dataset& dataset, const std::filesystem::path& path,
    std::string autosave_path) {
  ActiveLearningRun run = ActiveLearningRun::from_json(read_json_file(path), dataset);
  return std::make_unique<LabelingService>(dataset, std::move(run),
                                           std::move(autosave_path));
}

ActiveLearningRun LabelingService::snapshot() const {
  std::shared_lock lock(mu_);
  return run_;
}

void LabelingService::build_routes() {
  server_ = std::make_unique<httplib::Server>();
  httplib::Server& srv = *server_;

  srv.Get("/api/status", [this](const httplib::Request&, httplib::Response& res) {
    send_json(res, 200, status());
  });

  srv.Get("/api/queries", [this](const httplib::Request& req, httplib::Response& res) {
    std::size_t limit = std::numeric_limits<std::size_t>::max();
    if (req.has_param("limit")) {
      const std::string raw = req.get_param_value("limit");
      try {
        std::size_t used = 0;
        const long long v = std::stoll(raw, &used);
        if (used != raw.size() || v < 1) throw std::invalid_argument(raw);
        limit = static_cast<std::size_t>(v);
      } catch (const std::exception&) {
        send_error(res, 400, "limit must be a positive integer");
        return;
      }
    }
    try {
      send_json(res, 200, queries(limit));
    } catch (const Error& e) {
      send_error(res, http_status(e.kind()), e.what());
    }
  });

  srv.Post("/api/labels", [this](const httplib::Request& req, httplib::Response& res) {
    json body;
    try {
      body = json::parse(req.body);
    } catch (const json::exception&) {
      send_error(res, 400, "body must be JSON");
      return;
    }
    if (!body.is_object() || !body.contains("id") || !body["id"].is_string() ||
        !body.contains("label") || !body["label"].is_number_integer()) {
      send_error(res, 400, "expected {\"id\": string, \"label\": 0|1}");
      return;
    }
    const auto label = body["label"].get<long long>();
    if (label != 0 && label != 1) {
      send_error(res, 400, "label must be 0 or 1");
      return;
    }
    try {
      send_json(res, 200, submit(body["id"].get<std::string>(), static_cast<int>(label)));
    } catch (const Error& e) {
      send_error(res, http_status(e.kind()), e.what());
    }
  });

  srv.Get("/api/report", [this](const httplib::Request&, httplib::Response& res) {
    res.status = 200;
    res.set_content(report_csv(), "text/csv");
  });
}

bool LabelingService::listen(const std::string& host, int port) {
  return server_->listen(host, port);
}

int LabelingService::bind_to_any_port(const std::string& host) {
  return server_->bind_to_any_port(host);
}

bool LabelingService::listen_after_bind() { return server_->listen_after_bind(); }

void LabelingService::stop() {
  if (server_) server_->stop();
}

}  // namespace aaeal
