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

#ifndef SALIENCE_TENSOR_AUTOGRAD_H_
#define SALIENCE_TENSOR_AUTOGRAD_H_

#include <functional>
#include <memory>
#include <vector>

#include "salience/tensor/tensor.h"

namespace salience {

// One value in the computation graph. Backward closures receive the node
// itself and read their operands through `inputs`, so no node holds an
// owning reference to itself.
struct Node {
  Tensor value;
  Tensor grad;  // allocated lazily, same shape as value
  bool requires_grad = false;
  const char* op = "leaf";
  std::vector<std::shared_ptr<Node>> inputs;
  std::function<void(Node&)> backward;

  // Allocates a zero gradient buffer if absent and returns it.
  Tensor& EnsureGrad();
};

// Shared handle to a graph node. Copies alias the same node.
class Var {
 public:
  Var() = default;
  explicit Var(Tensor value, bool requires_grad = false);

  const Tensor& value() const { return node_->value; }
  Tensor& mutable_value() { return node_->value; }
  const Tensor& grad() const { return node_->grad; }
  bool has_grad() const { return !node_->grad.empty(); }
  bool requires_grad() const { return node_->requires_grad; }
  const std::vector<size_t>& shape() const { return node_->value.shape(); }

  void ZeroGrad();
  void ClearGrad() { node_->grad = Tensor(); }

  Node* node() const { return node_.get(); }
  const std::shared_ptr<Node>& shared() const { return node_; }
  explicit operator bool() const { return node_ != nullptr; }

 private:
  friend Var MakeResult(Tensor, std::vector<Var>, std::function<void(Node&)>,
                        const char*);
  std::shared_ptr<Node> node_;
};

// Creates an op result. When gradient recording is disabled or no input
// requires a gradient, the inputs and closure are discarded.
Var MakeResult(Tensor value, std::vector<Var> inputs,
               std::function<void(Node&)> backward, const char* op);

// Reverse pass from a single-element loss. Gradients accumulate into every
// reachable node that requires them (parameters included).
void Backward(const Var& loss);

bool GradEnabled();

// Disables graph recording on the current thread for its lifetime.
class NoGradGuard {
 public:
  NoGradGuard();
  ~NoGradGuard();
  NoGradGuard(const NoGradGuard&) = delete;
  NoGradGuard& operator=(const NoGradGuard&) = delete;

 private:
  bool previous_;
};

}  // namespace salience

#endif  // SALIENCE_TENSOR_AUTOGRAD_H_
