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

#include "salience/heads/mlp_head.h"

#include <cmath>

#include "salience/errors.h"
#include "salience/tensor/ops.h"

namespace salience {
namespace {

Tensor Uniform(std::vector<size_t> shape, size_t fan_in, Rng& rng) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
  Tensor t(std::move(shape));
  for (double& v : t.values()) v = rng.Uniform(-bound, bound);
  return t;
}

}  // namespace

void AddMlpHead(size_t input_dim, ParameterSet& params, Rng& rng,
                const std::string& prefix) {
  const size_t hidden = MlpHiddenDim(input_dim);
  if (hidden == 0) {
    throw ConfigError("MLP head input of width " + std::to_string(input_dim) +
                      " leaves no hidden units");
  }
  params.Add(prefix + ".w1", Uniform({input_dim, hidden}, input_dim, rng));
  params.Add(prefix + ".b1", Uniform({hidden}, input_dim, rng));
  params.Add(prefix + ".w2", Uniform({hidden, 1}, hidden, rng));
  params.Add(prefix + ".b2", Uniform({1}, hidden, rng));
}

Var MlpLogits(const ParameterSet& params, const Var& features,
              const std::string& prefix) {
  Var h = ops::Relu(ops::Add(ops::MatMul(features, params.Get(prefix + ".w1")),
                             params.Get(prefix + ".b1")));
  return ops::Add(ops::MatMul(h, params.Get(prefix + ".w2")),
                  params.Get(prefix + ".b2"));
}

}  // namespace salience
