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

#ifndef SALIENCE_HEADS_LOSS_H_
#define SALIENCE_HEADS_LOSS_H_

#include <span>
#include <vector>

#include "salience/tensor/autograd.h"

namespace salience {

struct ReweightConfig {
  double alpha = 0.01;
  bool enabled = true;

  void Validate() const;
};

// w_c = (max_j f_j + alpha) / (f_{y_c} + alpha), counts taken over `labels`.
std::vector<double> ClassWeights(std::span<const int> labels, double alpha);

// Summed weighted binary cross-entropy; scores are clamped before the log.
Var ComputeLoss(const Var& scores, std::span<const double> targets,
                std::span<const double> weights = {});

}  // namespace salience

#endif  // SALIENCE_HEADS_LOSS_H_
