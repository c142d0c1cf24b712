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

#ifndef SALIENCE_TENSOR_OPS_H_
#define SALIENCE_TENSOR_OPS_H_

#include <optional>
#include <span>
#include <vector>

#include "salience/random.h"
#include "salience/tensor/autograd.h"

// Differentiable primitives. Rank-2 operands are [rows, cols]; "vector"
// means rank 1. Shape violations throw ShapeError naming the primitive and
// the offending shapes. Every backward accumulates the exact analytic
// gradient into inputs that require one.
namespace salience::ops {

// [m,k] x [k,n] -> [m,n]
Var MatMul(const Var& a, const Var& b);
// [m,k] x [n,k]^T -> [m,n]
Var MatMulNT(const Var& a, const Var& b);

// Elementwise sum of equal shapes, or rank-2 `a` plus a row vector `b`
// broadcast over rows.
Var Add(const Var& a, const Var& b);
Var Scale(const Var& a, double factor);

Var Relu(const Var& a);
Var Sigmoid(const Var& a);

// Row-wise softmax of a rank-2 tensor. Columns with key_mask[j] == false get
// probability exactly 0 and receive no gradient.
Var Softmax(const Var& a, std::span<const bool> key_mask = {});

// Row-wise layer normalization with affine gamma/beta of length cols.
Var LayerNorm(const Var& x, const Var& gamma, const Var& beta,
              double eps = 1e-5);

// Rows of `table` [V,d] selected by ids -> [ids.size(), d].
Var EmbeddingGather(const Var& table, std::span<const int32_t> ids);

// Mean / elementwise max over rows [start, end) of a rank-2 tensor -> [d].
// Max routes the gradient to the first maximal row of each column.
Var MeanOverSpan(const Var& x, size_t start, size_t end);
Var MaxOverSpan(const Var& x, size_t start, size_t end);

// Rank-1 parts -> one vector; rank-2 parts with equal rows -> column concat.
Var Concat(const std::vector<Var>& parts);

Var SliceColumns(const Var& x, size_t begin, size_t end);
Var SliceRows(const Var& x, size_t begin, size_t end);
// Gathers rows (repeats allowed) -> [indices.size(), cols].
Var SelectRows(const Var& x, std::span<const size_t> indices);
// Equal-length vectors -> [parts.size(), n].
Var StackRows(const std::vector<Var>& parts);
Var Reshape(const Var& x, std::vector<size_t> shape);

// Inverted dropout. Identity when rate == 0.
Var Dropout(const Var& x, double rate, Rng& rng);

// Σ x (scalar result).
Var Sum(const Var& x);
// Σ_i w_i x_i against a constant tensor of the same shape.
Var WeightedSum(const Var& x, const Tensor& weights);

inline constexpr double kProbabilityClamp = 1e-12;

// -Σ_c w_c [t_c log s_c + (1 - t_c) log(1 - s_c)] with s clamped to
// [1e-12, 1 - 1e-12]. Targets may be soft labels in [0, 1]. Clamped entries
// get zero gradient. An empty `weights` means all ones.
Var BinaryCrossEntropy(const Var& scores, std::span<const double> targets,
                       std::span<const double> weights = {});

}  // namespace salience::ops

#endif  // SALIENCE_TENSOR_OPS_H_
