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

#ifndef SALIENCE_TENSOR_PARAMETERS_H_
#define SALIENCE_TENSOR_PARAMETERS_H_

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "salience/tensor/autograd.h"

namespace salience {

struct MomentState {
  Tensor m;
  Tensor v;
};

// Named trainable tensors in insertion order, plus optimizer state.
class ParameterSet {
 public:
  ParameterSet() = default;

  // Registers a trainable parameter. Duplicate names are rejected.
  Var& Add(const std::string& name, Tensor init);

  bool Contains(const std::string& name) const;
  Var& Get(const std::string& name);
  const Var& Get(const std::string& name) const;

  const std::vector<std::string>& names() const { return names_; }
  size_t size() const { return names_.size(); }
  size_t NumScalars() const;

  // Allocates or zeroes every gradient buffer.
  void ZeroGrad();

  // Deep copy of values and optimizer state with fresh graph nodes.
  ParameterSet Clone() const;

  std::map<std::string, Tensor> Snapshot() const;
  // Overwrites values by name; shapes and name sets must match.
  void Restore(const std::map<std::string, Tensor>& snapshot);

  int64_t step() const { return step_; }
  void set_step(int64_t s) { step_ = s; }
  MomentState& moments(const std::string& name);

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, Var> vars_;
  std::unordered_map<std::string, MomentState> moments_;
  int64_t step_ = 0;
};

}  // namespace salience

#endif  // SALIENCE_TENSOR_PARAMETERS_H_
