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

#ifndef AAEAL_DATASET_HPP_
#define AAEAL_DATASET_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "tensor.hpp"

namespace aaeal {

struct ImageRecord {
  std::string id;
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<double> pixels;  // row-major, each in [0, 1]
};

struct LabelRecord {
  std::string id;
  double p_positive = 0.0;  // fraction of votes for class 1
};

struct DatasetSplit {
  std::vector<std::string> train_ids;
  std::vector<std::string> val_ids;
  std::vector<std::string> test_ids;
};

// Binary PGM (P5, maxval 255). Pixels are normalized by 1/255; the id is the
// file stem.
ImageRecord load_pgm(const std::filesystem::path& path);
ImageRecord parse_pgm(const std::string& bytes, const std::string& id);
std::string encode_pgm(const ImageRecord& image);
void write_pgm(const ImageRecord& image, const std::filesystem::path& path);

// CSV with header "id,p_positive"; LF or CRLF line endings.
std::vector<LabelRecord> load_labels_csv(const std::filesystem::path& path);
std::vector<LabelRecord> parse_labels_csv(const std::string& text);
void write_labels_csv(const std::vector<LabelRecord>& labels,
                      const std::filesystem::path& path);

// 1 iff p >= threshold; ties go to class 1.
int binarize_label(double p_positive, double threshold = 0.5);

// Images joined with their labels. All images share one size.
class Dataset {
 public:
  Dataset() = default;
  // Every image needs a label and every label an image.
  static Dataset join(std::vector<ImageRecord> images,
                      std::vector<LabelRecord> labels);

  std::size_t size() const { return images_.size(); }
  std::size_t width() const { return images_.empty() ? 0 : images_[0].width; }
  std::size_t height() const { return images_.empty() ? 0 : images_[0].height; }
  std::size_t pixel_count() const { return width() * height(); }

  const std::vector<std::string>& ids() const { return ids_; }
  bool contains(const std::string& id) const { return index_.count(id) > 0; }
  std::size_t index_of(const std::string& id) const;
  const ImageRecord& image(std::size_t i) const { return images_[i]; }
  double p_positive(std::size_t i) const { return p_positive_[i]; }
  int label(std::size_t i) const { return binarize_label(p_positive_[i]); }

  // Stacked pixel rows for the given ids or indices.
  Tensor images(std::span<const std::size_t> indices) const;
  Tensor images(const std::vector<std::string>& ids) const;
  std::vector<int> labels(const std::vector<std::string>& ids) const;

  std::vector<LabelRecord> label_records() const;

  // New dataset holding only the given ids, in the given order.
  Dataset subset(const std::vector<std::string>& ids) const;

 private:
  std::vector<ImageRecord> images_;
  std::vector<double> p_positive_;
  std::vector<std::string> ids_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Loads every *.pgm under dir (sorted by name) and joins with the labels file.
Dataset load_dataset(const std::filesystem::path& dir,
                     const std::filesystem::path& labels_path);
// Writes <id>.pgm files plus labels.csv into dir.
void save_dataset(const Dataset& dataset, const std::filesystem::path& dir);

// Deterministic shuffle then partition; val and test sizes are floors, the
// remainder goes to train.
DatasetSplit make_splits(const std::vector<std::string>& ids,
                         double train_frac, double val_frac, double test_frac,
                         std::uint64_t seed);

}  // namespace aaeal

#endif  // AAEAL_DATASET_HPP_
