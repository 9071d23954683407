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

#include "tensor.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "error.hpp"

namespace aaeal {

namespace {

std::string shape_string(const std::vector<std::size_t>& shape) {
  std::string s = "[";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) s += " x ";
    s += std::to_string(shape[i]);
  }
  return s + "]";
}

}  // namespace

Tensor::Tensor(std::vector<std::size_t> shape, double fill)
    : shape_(std::move(shape)) {
  if (shape_.empty()) fail(ErrorKind::kShape, "tensor shape must be nonempty");
  for (std::size_t d : shape_) {
    if (d == 0) fail(ErrorKind::kShape, "tensor dimensions must be positive, got " + shape_string(shape_));
  }
  const std::size_t n = std::accumulate(shape_.begin(), shape_.end(),
                                        std::size_t{1}, std::multiplies<>());
  data_.assign(n, fill);
}

Tensor Tensor::from(std::size_t rows, std::size_t cols,
                    std::vector<double> values) {
  Tensor t(rows, cols);
  if (values.size() != t.size()) {
    fail(ErrorKind::kShape, "expected " + std::to_string(t.size()) +
                                " values for " + shape_string(t.shape_) +
                                ", got " + std::to_string(values.size()));
  }
  t.data_.assign(values.begin(), values.end());
  return t;
}

Tensor Tensor::vector(std::vector<double> values) {
  Tensor t(std::vector<std::size_t>{values.size()});
  t.data_.assign(values.begin(), values.end());
  return t;
}

std::size_t Tensor::rows() const {
  if (shape_.size() == 1) return 1;
  if (shape_.size() != 2) fail(ErrorKind::kShape, "expected rank-2 tensor, got " + shape_string(shape_));
  return shape_[0];
}

std::size_t Tensor::cols() const {
  if (shape_.size() == 1) return shape_[0];
  if (shape_.size() != 2) fail(ErrorKind::kShape, "expected rank-2 tensor, got " + shape_string(shape_));
  return shape_[1];
}

void Tensor::fill(double v) { std::fill(data_.begin(), data_.end(), v); }

bool Tensor::all_finite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](double v) { return std::isfinite(v); });
}

Tensor Tensor::slice_rows(std::size_t begin, std::size_t count) const {
  const std::size_t c = cols();
  if (count == 0 || begin + count > rows()) {
    fail(ErrorKind::kShape, "row slice out of range");
  }
  Tensor out(count, c);
  std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(begin * c),
              count * c, out.data_.begin());
  return out;
}

Tensor Tensor::gather_rows(std::span<const std::size_t> indices) const {
  const std::size_t c = cols();
  const std::size_t r = rows();
  if (indices.empty()) fail(ErrorKind::kShape, "gather of zero rows");
  Tensor out(indices.size(), c);
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] >= r) fail(ErrorKind::kShape, "gather index out of range");
    std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(indices[i] * c), c,
                out.data_.begin() + static_cast<std::ptrdiff_t>(i * c));
  }
  return out;
}

Tensor Tensor::vstack(const Tensor& top, const Tensor& bottom) {
  if (top.cols() != bottom.cols()) {
    fail(ErrorKind::kShape, "vstack column mismatch: " + shape_string(top.shape_) +
                                " vs " + shape_string(bottom.shape_));
  }
  Tensor out(top.rows() + bottom.rows(), top.cols());
  std::copy(top.data_.begin(), top.data_.end(), out.data_.begin());
  std::copy(bottom.data_.begin(), bottom.data_.end(),
            out.data_.begin() + static_cast<std::ptrdiff_t>(top.size()));
  return out;
}

void require_same_shape(const Tensor& a, const Tensor& b, const char* what) {
  if (!a.same_shape(b)) {
    fail(ErrorKind::kShape, std::string(what) + ": shape " + shape_string(a.shape()) +
                                " does not match " + shape_string(b.shape()));
  }
}

void require_finite(const Tensor& t, const char* what) {
  if (!t.all_finite()) {
    fail(ErrorKind::kNumeric, std::string(what) + " produced a non-finite value");
  }
}

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kShape: return "shape error";
    case ErrorKind::kState: return "state error";
    case ErrorKind::kInput: return "input error";
    case ErrorKind::kFormat: return "format error";
    case ErrorKind::kConfig: return "config error";
    case ErrorKind::kIo: return "i/o error";
    case ErrorKind::kConflict: return "conflict";
    case ErrorKind::kValidation: return "validation error";
    case ErrorKind::kNumeric: return "numeric error";
  }
  return "error";
}

}  // namespace aaeal
