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

#include "salience/tensor/autograd.h"

#include <unordered_set>

#include "salience/errors.h"

namespace salience {
namespace {

thread_local bool g_grad_enabled = true;

}  // namespace

Tensor& Node::EnsureGrad() {
  if (grad.empty() && !value.empty()) grad = Tensor(value.shape());
  return grad;
}

Var::Var(Tensor value, bool requires_grad)
    : node_(std::make_shared<Node>()) {
  node_->value = std::move(value);
  node_->requires_grad = requires_grad;
}

void Var::ZeroGrad() {
  if (node_->grad.empty()) {
    node_->EnsureGrad();
  } else {
    node_->grad.Fill(0.0);
  }
}

Var MakeResult(Tensor value, std::vector<Var> inputs,
               std::function<void(Node&)> backward, const char* op) {
  Var out(std::move(value));
  out.node_->op = op;
  if (!g_grad_enabled) return out;
  bool any = false;
  for (const auto& in : inputs) any = any || in.requires_grad();
  if (!any) return out;
  out.node_->requires_grad = true;
  out.node_->backward = std::move(backward);
  out.node_->inputs.reserve(inputs.size());
  for (auto& in : inputs) out.node_->inputs.push_back(in.shared());
  return out;
}

void Backward(const Var& loss) {
  if (!loss) throw ShapeError("Backward: null loss");
  if (loss.value().size() != 1) {
    throw ShapeError("Backward: loss must have one element, got shape " +
                     loss.value().ShapeString());
  }
  if (!loss.requires_grad()) return;

  // Iterative post-order DFS gives a topological order.
  std::vector<Node*> order;
  std::unordered_set<Node*> visited;
  std::vector<std::pair<Node*, size_t>> stack;
  stack.emplace_back(loss.node(), 0);
  visited.insert(loss.node());
  while (!stack.empty()) {
    auto& [node, next] = stack.back();
    if (next < node->inputs.size()) {
      Node* child = node->inputs[next++].get();
      if (child->requires_grad && visited.insert(child).second) {
        stack.emplace_back(child, 0);
      }
    } else {
      order.push_back(node);
      stack.pop_back();
    }
  }

  loss.node()->EnsureGrad()[0] += 1.0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    Node* n = *it;
    if (n->backward && !n->grad.empty()) n->backward(*n);
  }
}

bool GradEnabled() { return g_grad_enabled; }

NoGradGuard::NoGradGuard() : previous_(g_grad_enabled) {
  g_grad_enabled = false;
}

NoGradGuard::~NoGradGuard() { g_grad_enabled = previous_; }

}  // namespace salience
