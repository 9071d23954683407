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

#include "dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "error.hpp"

namespace aaeal {

namespace {

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kIo, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int binarize_label(double p_positive, double threshold) {
  return p_positive >= threshold ? 1 : 0;
}

std::vector<LabelRecord> parse_labels_csv(const std::string& text) {
  std::vector<LabelRecord> out;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string line;
  std::size_t row = 0;
  bool header = true;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (header) {
      if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) {
        line.erase(0, 3);
      }
      if (line != "id,p_positive") {
        fail(ErrorKind::kFormat, "labels: header must be 'id,p_positive', got '" + line + "'");
      }
      header = false;
      continue;
    }
    if (line.empty()) continue;
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
      fail(ErrorKind::kFormat, "labels row " + std::to_string(row) +
                                   ": expected 2 columns (id,p_positive)");
    }
    LabelRecord rec;
    rec.id = line.substr(0, comma);
    const std::string num = line.substr(comma + 1);
    if (rec.id.empty()) {
      fail(ErrorKind::kFormat, "labels row " + std::to_string(row) + ": missing id");
    }
    const auto [end, ec] =
        std::from_chars(num.data(), num.data() + num.size(), rec.p_positive);
    if (num.empty() || ec != std::errc() || end != num.data() + num.size()) {
      fail(ErrorKind::kFormat, "labels row " + std::to_string(row) +
                                   ": p_positive '" + num + "' is not a number");
    }
    if (!(rec.p_positive >= 0.0 && rec.p_positive <= 1.0)) {
      fail(ErrorKind::kFormat, "labels row " + std::to_string(row) +
                                   ": p_positive " + num + " outside [0, 1]");
    }
    if (!seen.insert(rec.id).second) {
      fail(ErrorKind::kFormat, "labels row " + std::to_string(row) +
                                   ": duplicate id '" + rec.id + "'");
    }
    out.push_back(std::move(rec));
  }
  if (header) fail(ErrorKind::kFormat, "labels: missing header 'id,p_positive'");
  return out;
}

std::vector<LabelRecord> load_labels_csv(const std::filesystem::path& path) {
  return parse_labels_csv(read_text(path));
}

void write_labels_csv(const std::vector<LabelRecord>& labels,
                      const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::kIo, "cannot write " + path.string());
  out << "id,p_positive\n";
  char buf[64];
  for (const LabelRecord& r : labels) {
    std::snprintf(buf, sizeof buf, "%.17g", r.p_positive);
    out << r.id << ',' << buf << '\n';
  }
  if (!out) fail(ErrorKind::kIo, "write failed for " + path.string());
}

Dataset Dataset::join(std::vector<ImageRecord> images,
                      std::vector<LabelRecord> labels) {
  std::unordered_map<std::string, double> by_id;
  for (const LabelRecord& r : labels) {
    if (!by_id.emplace(r.id, r.p_positive).second) {
      fail(ErrorKind::kFormat, "duplicate label id '" + r.id + "'");
    }
  }
  Dataset d;
  for (ImageRecord& img : images) {
    auto it = by_id.find(img.id);
    if (it == by_id.end()) {
      fail(ErrorKind::kInput, "missing id: image '" + img.id + "' has no label");
    }
    if (!d.images_.empty() && (img.width != d.images_[0].width ||
                               img.height != d.images_[0].height)) {
      fail(ErrorKind::kInput, "image '" + img.id + "' size differs from '" +
                                  d.images_[0].id + "'");
    }
    if (img.pixels.size() != img.width * img.height) {
      fail(ErrorKind::kShape, "image '" + img.id + "' pixel count mismatch");
    }
    for (double v : img.pixels) {
      if (!(v >= 0.0 && v <= 1.0)) {
        fail(ErrorKind::kInput, "image '" + img.id + "' has a pixel outside [0, 1]");
      }
    }
    if (!d.index_.emplace(img.id, d.images_.size()).second) {
      fail(ErrorKind::kInput, "duplicate image id '" + img.id + "'");
    }
    d.p_positive_.push_back(it->second);
    d.ids_.push_back(img.id);
    by_id.erase(it);
    d.images_.push_back(std::move(img));
  }
  if (!by_id.empty()) {
    std::vector<std::string> missing;
    for (const auto& [id, p] : by_id) missing.push_back(id);
    std::sort(missing.begin(), missing.end());
    fail(ErrorKind::kInput, "missing id: label '" + missing.front() +
                                "' has no image (" + std::to_string(missing.size()) +
                                " unmatched)");
  }
  return d;
}

std::size_t Dataset::index_of(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) fail(ErrorKind::kInput, "unknown id '" + id + "'");
  return it->second;
}

Tensor Dataset::images(std::span<const std::size_t> indices) const {
  if (indices.empty()) fail(ErrorKind::kInput, "no images requested");
  const std::size_t w = pixel_count();
  Tensor out(indices.size(), w);
  for (std::size_t i = 0; i < indices.size(); ++i) {
    const auto& px = images_.at(indices[i]).pixels;
    std::copy(px.begin(), px.end(), out.data() + i * w);
  }
  return out;
}

Tensor Dataset::images(const std::vector<std::string>& ids) const {
  std::vector<std::size_t> idx;
  idx.reserve(ids.size());
  for (const std::string& id : ids) idx.push_back(index_of(id));
  return images(idx);
}

std::vector<int> Dataset::labels(const std::vector<std::string>& ids) const {
  std::vector<int> out;
  out.reserve(ids.size());
  for (const std::string& id : ids) out.push_back(label(index_of(id)));
  return out;
}

std::vector<LabelRecord> Dataset::label_records() const {
  std::vector<LabelRecord> out;
  for (std::size_t i = 0; i < size(); ++i) out.push_back({ids_[i], p_positive_[i]});
  return out;
}

Dataset Dataset::subset(const std::vector<std::string>& ids) const {
  std::vector<ImageRecord> imgs;
  std::vector<LabelRecord> labs;
  for (const std::string& id : ids) {
    const std::size_t i = index_of(id);
    imgs.push_back(images_[i]);
    labs.push_back({id, p_positive_[i]});
  }
  return join(std::move(imgs), std::move(labs));
}

Dataset load_dataset(const std::filesystem::path& dir,
                     const std::filesystem::path& labels_path) {
  if (!std::filesystem::is_directory(dir)) {
    fail(ErrorKind::kIo, "not a directory: " + dir.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".pgm") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<ImageRecord> images;
  images.reserve(files.size());
  for (const auto& f : files) images.push_back(load_pgm(f));
  return Dataset::join(std::move(images), load_labels_csv(labels_path));
}

void save_dataset(const Dataset& dataset, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(ErrorKind::kIo, "cannot create " + dir.string() + ": " + ec.message());
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    write_pgm(dataset.image(i), dir / (dataset.ids()[i] + ".pgm"));
  }
  write_labels_csv(dataset.label_records(), dir / "labels.csv");
}

DatasetSplit make_splits(const std::vector<std::string>& ids, double train_frac,
                         double val_frac, double test_frac, std::uint64_t seed) {
  if (ids.size() < 10) {
    fail(ErrorKind::kInput, "make_splits needs at least 10 ids, got " +
                                std::to_string(ids.size()));
  }
  if (train_frac < 0 || val_frac <= 0 || test_frac <= 0 ||
      std::abs(train_frac + val_frac + test_frac - 1.0) > 1e-9) {
    fail(ErrorKind::kInput, "split fractions must be positive and sum to 1");
  }
  std::vector<std::string> order = ids;
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  const double n = static_cast<double>(order.size());
  const auto n_val = static_cast<std::size_t>(std::floor(n * val_frac + 1e-9));
  const auto n_test = static_cast<std::size_t>(std::floor(n * test_frac + 1e-9));
  if (n_val == 0 || n_test == 0 || n_val + n_test >= order.size()) {
    fail(ErrorKind::kInput, "split fractions leave an empty partition");
  }
  const std::size_t n_train = order.size() - n_val - n_test;
  DatasetSplit s;
  s.train_ids.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
  s.val_ids.assign(order.begin() + static_cast<std::ptrdiff_t>(n_train),
                   order.begin() + static_cast<std::ptrdiff_t>(n_train + n_val));
  s.test_ids.assign(order.begin() + static_cast<std::ptrdiff_t>(n_train + n_val), order.end());
  return s;
}

}  // namespace aaeal
