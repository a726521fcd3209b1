// Copyright 2026 The ssum-transfer Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace ssum::compute {

using Shape = std::vector<std::size_t>;

/// Number of elements implied by a shape (1 for rank 0).
std::size_t shape_size(const Shape& shape) noexcept;
std::string shape_string(const Shape& shape);

/// Dense row-major array of doubles.
///
/// Invariant: shape_size(shape()) == values().size().
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(Shape shape, double fill = 0.0);
  Tensor(Shape shape, std::vector<double> values);

  static Tensor scalar(double value) { return Tensor(Shape{}, std::vector<double>{value}); }
  static Tensor vector(std::vector<double> values);
  static Tensor matrix(std::size_t rows, std::size_t cols, std::vector<double> values);

  const Shape& shape() const noexcept { return shape_; }
  std::size_t rank() const noexcept { return shape_.size(); }
  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }
  std::size_t dim(std::size_t axis) const;

  /// 2-D accessors; rows() is the product of all leading extents.
  std::size_t rows() const;
  std::size_t cols() const;

  std::span<double> values() noexcept { return values_; }
  std::span<const double> values() const noexcept { return values_; }
  double* data() noexcept { return values_.data(); }
  const double* data() const noexcept { return values_.data(); }

  double& operator[](std::size_t i) noexcept { return values_[i]; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  double& at(std::size_t r, std::size_t c) noexcept { return values_[r * cols() + c]; }
  double at(std::size_t r, std::size_t c) const noexcept { return values_[r * cols() + c]; }

  /// Value of a single-element tensor.
  double item() const;

  bool all_finite() const noexcept;
  Tensor reshaped(Shape shape) const;
  void fill(double value) noexcept;

 private:
  Shape shape_;
  std::vector<double> values_;
};

/// Bitwise equality of shape and payload (distinguishes -0.0 from 0.0).
bool bit_equal(const Tensor& a, const Tensor& b) noexcept;

/// Largest absolute element-wise difference; throws ShapeError on mismatch.
double max_abs_diff(const Tensor& a, const Tensor& b);

}  // namespace ssum::compute
