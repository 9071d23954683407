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

#ifndef AAEAL_SERVICE_HPP_
#define AAEAL_SERVICE_HPP_

#include <condition_variable>
#include <cstddef>
#include <filesystem>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <thread>

#include "active_learning.hpp"
#include "config.hpp"
#include "dataset.hpp"
#include "json.hpp"

namespace httplib {
class Server;
}

namespace aaeal {

// Human-oracle active learning behind a small JSON API:
//   GET  /api/status
//   GET  /api/queries?limit=K
//   POST /api/labels   {"id": string, "label": 0|1}
//   GET  /api/report   (CSV)
// Reads run concurrently; label submissions take the writer lock. When a
// round's last label lands, a background worker retrains on a copy of the run
// and swaps it in; submissions are refused with a conflict meanwhile.
class LabelingService {
 public:
  // Fresh run over `dataset` using settings (oracle forced to human mode).
  LabelingService(const Dataset& dataset, const RunSettings& settings);
  // Resumes a run; a run saved with its quota met starts retraining at once.
  LabelingService(const Dataset& dataset, ActiveLearningRun run,
                  std::string checkpoint_path = {});
  ~LabelingService();

  LabelingService(const LabelingService&) = delete;
  LabelingService& operator=(const LabelingService&) = delete;

  nlohmann::json status() const;
  // Up to `limit` pending ids in priority order with base64 raw pixel bytes.
  nlohmann::json queries(std::size_t limit) const;
  // {"accepted": true, "quota_remaining": n}
  nlohmann::json submit(const std::string& id, int label);
  std::string report_csv() const;

  bool training() const;
  // Blocks until no retraining is in flight.
  void wait_until_idle() const;

  void save_checkpoint(const std::filesystem::path& path) const;
  static std::unique_ptr<LabelingService> from_checkpoint(
      const Dataset& dataset, const std::filesystem::path& path,
      std::string autosave_path = {});

  // Copy of the engine state (test and CLI support).
  ActiveLearningRun snapshot() const;

  // HTTP front end. listen() blocks until stop().
  bool listen(const std::string& host, int port);
  int bind_to_any_port(const std::string& host);
  bool listen_after_bind();
  void stop();

 private:
  void build_routes();
  void start_training_locked();
  void autosave_locked() const;

  const Dataset* dataset_;
  ActiveLearningRun run_;
  std::string checkpoint_path_;
  mutable std::shared_mutex mu_;
  mutable std::condition_variable_any idle_cv_;
  bool training_ = false;
  std::string last_training_error_;
  std::thread worker_;
  std::unique_ptr<httplib::Server> server_;
};

// Builds the split and schedule described by settings and starts a run.
ActiveLearningRun make_run(const Dataset& dataset, const RunSettings& settings);

}  // namespace aaeal

#endif  // AAEAL_SERVICE_HPP_
