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

#ifndef AAEAL_TENSOR_HPP_
#define AAEAL_TENSOR_HPP_

#include <cstddef>
#include <initializer_list>
#include <new>
#include <span>
#include <vector>

namespace aaeal {

// Dense row-major array of doubles. Every public operation of the library
// leaves tensors finite; Tensor itself only guards its shape.
// Storage starts on a 64-byte boundary so vectorized kernels see the same
// alignment on every run; reductions are then bit-reproducible.
template <typename T>
struct AlignedAllocator {
  using value_type = T;
  static constexpr std::align_val_t kAlign{64};

  AlignedAllocator() = default;
  template <typename U>
  AlignedAllocator(const AlignedAllocator<U>&) {}

  T* allocate(std::size_t n) {
    return static_cast<T*>(::operator new(n * sizeof(T), kAlign));
  }
  void deallocate(T* p, std::size_t) { ::operator delete(p, kAlign); }

  template <typename U>
  friend bool operator==(const AlignedAllocator&, const AlignedAllocator<U>&) {
    return true;
  }
};

class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(std::vector<std::size_t> shape, double fill = 0.0);
  Tensor(std::size_t rows, std::size_t cols, double fill = 0.0)
      : Tensor(std::vector<std::size_t>{rows, cols}, fill) {}

  static Tensor from(std::size_t rows, std::size_t cols,
                     std::vector<double> values);
  static Tensor vector(std::vector<double> values);

  const std::vector<std::size_t>& shape() const { return shape_; }
  std::size_t rank() const { return shape_.size(); }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  // Rank-2 views. A rank-1 tensor is treated as a single row.
  std::size_t rows() const;
  std::size_t cols() const;

  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }
  double& at(std::size_t r, std::size_t c) { return data_[r * cols() + c]; }
  double at(std::size_t r, std::size_t c) const { return data_[r * cols() + c]; }

  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }
  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }

  void fill(double v);
  bool same_shape(const Tensor& other) const { return shape_ == other.shape_; }
  bool all_finite() const;

  // Rows [begin, begin+count) as a new tensor.
  Tensor slice_rows(std::size_t begin, std::size_t count) const;
  // Rows picked by index, in the given order.
  Tensor gather_rows(std::span<const std::size_t> indices) const;
  // Vertical concatenation of two rank-2 tensors with equal column counts.
  static Tensor vstack(const Tensor& top, const Tensor& bottom);

  friend bool operator==(const Tensor& a, const Tensor& b) {
    return a.shape_ == b.shape_ && a.data_ == b.data_;
  }

 private:
  std::vector<std::size_t> shape_;
  std::vector<double, AlignedAllocator<double>> data_;
};

// Throws a shape error naming `what` if the tensors differ in shape.
void require_same_shape(const Tensor& a, const Tensor& b, const char* what);
// Throws a numeric error if any entry is NaN or infinite.
void require_finite(const Tensor& t, const char* what);

}  // namespace aaeal

#endif  // AAEAL_TENSOR_HPP_
