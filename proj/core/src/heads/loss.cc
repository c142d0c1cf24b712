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

#include "salience/heads/loss.h"

#include <algorithm>

#include "salience/errors.h"
#include "salience/tensor/ops.h"

namespace salience {

void ReweightConfig::Validate() const {
  if (!(alpha > 0.0)) throw ConfigError("reweight alpha must be > 0");
}

std::vector<double> ClassWeights(std::span<const int> labels, double alpha) {
  if (labels.empty()) throw DomainError("class weights need a non-empty batch");
  if (!(alpha > 0.0)) throw ConfigError("reweight alpha must be > 0");
  double f[2] = {0.0, 0.0};
  for (int y : labels) {
    if (y != 0 && y != 1) throw DomainError("labels must be 0 or 1");
    f[y] += 1.0;
  }
  const double top = std::max(f[0], f[1]);
  std::vector<double> w;
  w.reserve(labels.size());
  for (int y : labels) w.push_back((top + alpha) / (f[y] + alpha));
  return w;
}

Var ComputeLoss(const Var& scores, std::span<const double> targets,
                std::span<const double> weights) {
  return ops::BinaryCrossEntropy(scores, targets, weights);
}

}  // namespace salience
