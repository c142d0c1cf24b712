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

#ifndef SALIENCE_TENSOR_ADAMW_H_
#define SALIENCE_TENSOR_ADAMW_H_

#include "salience/tensor/parameters.h"

namespace salience {

struct AdamWConfig {
  double learning_rate = 3e-4;
  double weight_decay = 0.01;
  double epsilon = 1e-8;
  double beta1 = 0.9;
  double beta2 = 0.999;

  void Validate() const;
};

// One optimizer step over every parameter, in insertion order.
// Decay is applied to the weights directly, not folded into the gradient.
void AdamWStep(ParameterSet& params, const AdamWConfig& config);

}  // namespace salience

#endif  // SALIENCE_TENSOR_ADAMW_H_
