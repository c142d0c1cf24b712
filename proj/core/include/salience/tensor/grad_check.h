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

#ifndef SALIENCE_TENSOR_GRAD_CHECK_H_
#define SALIENCE_TENSOR_GRAD_CHECK_H_

#include <cstdint>
#include <functional>
#include <string>

#include "salience/tensor/parameters.h"

namespace salience {

struct GradCheckOptions {
  double eps = 1e-6;
  double tolerance = 1e-4;
  // Denominator floor for the relative error, so that gradients near zero
  // are judged on absolute error instead.
  double floor = 1e-4;
  // 0 checks every element; otherwise a seeded sample per parameter.
  size_t max_elements_per_parameter = 0;
  uint64_t seed = 0;
};

struct GradCheckResult {
  double max_relative_error = 0.0;
  std::string worst_parameter;
  size_t worst_index = 0;
  double worst_analytic = 0.0;
  double worst_numeric = 0.0;
  size_t elements_checked = 0;
  bool passed = false;
};

// Compares the analytic gradient of `loss_fn` with central differences.
// `loss_fn` must build a fresh graph from `params` on every call.
GradCheckResult GradCheck(const std::function<Var()>& loss_fn,
                          ParameterSet& params,
                          const GradCheckOptions& options = {});

}  // namespace salience

#endif  // SALIENCE_TENSOR_GRAD_CHECK_H_
