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

#include "salience/tensor/adamw.h"

#include <cmath>
#include <string>

#include "salience/errors.h"

namespace salience {

void AdamWConfig::Validate() const {
  if (!(learning_rate > 0.0)) throw ConfigError("learning_rate must be > 0");
  if (!(weight_decay >= 0.0)) throw ConfigError("weight_decay must be >= 0");
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be > 0");
  if (!(beta1 > 0.0 && beta1 < 1.0)) throw ConfigError("beta1 must lie in (0,1)");
  if (!(beta2 > 0.0 && beta2 < 1.0)) throw ConfigError("beta2 must lie in (0,1)");
}

void AdamWStep(ParameterSet& params, const AdamWConfig& config) {
  config.Validate();
  for (const auto& name : params.names()) {
    if (!params.Get(name).has_grad()) {
      throw ConfigError("parameter '" + name + "' has no gradient");
    }
  }
  params.set_step(params.step() + 1);
  const double t = static_cast<double>(params.step());
  const double c1 = 1.0 - std::pow(config.beta1, t);
  const double c2 = 1.0 - std::pow(config.beta2, t);
  const double decay = 1.0 - config.learning_rate * config.weight_decay;
  for (const auto& name : params.names()) {
    Var& var = params.Get(name);
    MomentState& st = params.moments(name);
    Tensor& w = var.mutable_value();
    const Tensor& g = var.grad();
    for (size_t i = 0; i < w.size(); ++i) {
      st.m[i] = config.beta1 * st.m[i] + (1.0 - config.beta1) * g[i];
      st.v[i] = config.beta2 * st.v[i] + (1.0 - config.beta2) * g[i] * g[i];
      const double mhat = st.m[i] / c1;
      const double vhat = st.v[i] / c2;
      w[i] = w[i] * decay -
             config.learning_rate * mhat / (std::sqrt(vhat) + config.epsilon);
    }
  }
}

}  // namespace salience
