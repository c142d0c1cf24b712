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

#include "salience/tensor/tensor.h"

#include <algorithm>
#include <cstring>

#include "salience/errors.h"

namespace salience {

size_t ShapeSize(const std::vector<size_t>& shape) {
  size_t n = 1;
  for (size_t d : shape) n *= d;
  return n;
}

std::string ShapeString(const std::vector<size_t>& shape) {
  std::string s = "[";
  for (size_t i = 0; i < shape.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(shape[i]);
  }
  return s + "]";
}

Tensor::Tensor(std::vector<size_t> shape, double fill)
    : shape_(std::move(shape)), data_(ShapeSize(shape_), fill) {}

Tensor::Tensor(std::vector<size_t> shape, std::vector<double> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
  if (data_.size() != ShapeSize(shape_)) {
    throw ShapeError("Tensor: " + std::to_string(data_.size()) +
                     " values for shape " + salience::ShapeString(shape_));
  }
}

Tensor Tensor::Vector(std::vector<double> v) {
  const size_t n = v.size();
  return Tensor({n}, std::move(v));
}

Tensor Tensor::Matrix(
    std::initializer_list<std::initializer_list<double>> rows) {
  const size_t r = rows.size();
  const size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<double> data;
  data.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw ShapeError("Tensor::Matrix: ragged rows");
    data.insert(data.end(), row.begin(), row.end());
  }
  return Tensor({r, c}, std::move(data));
}

void Tensor::Fill(double v) { std::fill(data_.begin(), data_.end(), v); }

void Tensor::AddInPlace(const Tensor& other) {
  if (!SameShape(other)) {
    throw ShapeError("AddInPlace: " + ShapeString() + " vs " +
                     other.ShapeString());
  }
  for (size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
}

std::string Tensor::ShapeString() const {
  return salience::ShapeString(shape_);
}

bool Tensor::operator==(const Tensor& o) const {
  return shape_ == o.shape_ &&
         (data_.empty() ||
          std::memcmp(data_.data(), o.data_.data(),
                      data_.size() * sizeof(double)) == 0);
}

}  // namespace salience
