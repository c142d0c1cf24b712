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

#include "salience/tensor/grad_check.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "salience/errors.h"
#include "salience/random.h"

namespace salience {
namespace {

double Evaluate(const std::function<Var()>& loss_fn) {
  NoGradGuard guard;
  const Var loss = loss_fn();
  if (loss.value().size() != 1) throw ShapeError("grad_check: loss is not scalar");
  const double v = loss.value()[0];
  if (!std::isfinite(v)) throw NumericalError("grad_check: non-finite loss");
  return v;
}

}  // namespace

GradCheckResult GradCheck(const std::function<Var()>& loss_fn,
                          ParameterSet& params,
                          const GradCheckOptions& options) {
  if (!(options.eps >= 1e-7 && options.eps <= 1e-4)) {
    throw ConfigError("grad_check: eps must lie in [1e-7, 1e-4]");
  }
  params.ZeroGrad();
  const Var loss = loss_fn();
  if (!std::isfinite(loss.value()[0])) {
    throw NumericalError("grad_check: non-finite loss");
  }
  Backward(loss);

  GradCheckResult result;
  Rng rng(options.seed);
  for (const auto& name : params.names()) {
    Var& var = params.Get(name);
    const Tensor analytic = var.grad();
    std::vector<size_t> order(var.value().size());
    std::iota(order.begin(), order.end(), 0);
    if (options.max_elements_per_parameter > 0 &&
        order.size() > options.max_elements_per_parameter) {
      rng.Shuffle(order);
      order.resize(options.max_elements_per_parameter);
      std::sort(order.begin(), order.end());
    }
    for (size_t i : order) {
      double& w = var.mutable_value()[i];
      const double original = w;
      w = original + options.eps;
      const double up_x = w;
      const double up = Evaluate(loss_fn);
      w = original - options.eps;
      const double down_x = w;
      const double down = Evaluate(loss_fn);
      w = original;
      const double numeric = (up - down) / (up_x - down_x);
      const double a = analytic[i];
      const double denom =
          std::max({std::abs(a), std::abs(numeric), options.floor});
      const double rel = std::abs(a - numeric) / denom;
      ++result.elements_checked;
      if (rel > result.max_relative_error || result.worst_parameter.empty()) {
        result.max_relative_error = rel;
        result.worst_parameter = name;
        result.worst_index = i;
        result.worst_analytic = a;
        result.worst_numeric = numeric;
      }
    }
  }
  result.passed = result.max_relative_error < options.tolerance;
  return result;
}

}  // namespace salience
