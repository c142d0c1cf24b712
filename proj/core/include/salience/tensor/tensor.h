// Copyright 2026 The Salience Lab Authors.
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

#ifndef SALIENCE_TENSOR_TENSOR_H_
#define SALIENCE_TENSOR_TENSOR_H_

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace salience {

// Dense row-major array of doubles.
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(std::vector<size_t> shape, double fill = 0.0);
  Tensor(std::vector<size_t> shape, std::vector<double> data);

  static Tensor Scalar(double v) { return Tensor({1}, {v}); }
  static Tensor Vector(std::vector<double> v);
  static Tensor Matrix(std::initializer_list<std::initializer_list<double>> rows);

  const std::vector<size_t>& shape() const { return shape_; }
  size_t rank() const { return shape_.size(); }
  size_t dim(size_t i) const { return shape_.at(i); }
  size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  // Rank-2 accessors; a rank-1 tensor is treated as a single row.
  size_t rows() const { return shape_.size() == 2 ? shape_[0] : 1; }
  size_t cols() const { return shape_.empty() ? 0 : shape_.back(); }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }

  double& operator[](size_t i) { return data_[i]; }
  double operator[](size_t i) const { return data_[i]; }
  double& at(size_t r, size_t c) { return data_[r * cols() + c]; }
  double at(size_t r, size_t c) const { return data_[r * cols() + c]; }

  void Fill(double v);
  // Adds `other` elementwise; shapes must match.
  void AddInPlace(const Tensor& other);

  bool SameShape(const Tensor& o) const { return shape_ == o.shape_; }
  std::string ShapeString() const;

  // Bitwise equality of shape and values.
  bool operator==(const Tensor& o) const;

 private:
  std::vector<size_t> shape_;
  std::vector<double> data_;
};

size_t ShapeSize(const std::vector<size_t>& shape);
std::string ShapeString(const std::vector<size_t>& shape);

}  // namespace salience

#endif  // SALIENCE_TENSOR_TENSOR_H_
