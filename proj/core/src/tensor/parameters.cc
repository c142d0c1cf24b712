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

#include "salience/tensor/parameters.h"

#include "salience/errors.h"

namespace salience {

Var& ParameterSet::Add(const std::string& name, Tensor init) {
  if (name.empty()) throw ConfigError("parameter name must be non-empty");
  if (vars_.count(name)) {
    throw ConfigError("duplicate parameter '" + name + "'");
  }
  names_.push_back(name);
  return vars_.emplace(name, Var(std::move(init), true)).first->second;
}

bool ParameterSet::Contains(const std::string& name) const {
  return vars_.count(name) > 0;
}

Var& ParameterSet::Get(const std::string& name) {
  auto it = vars_.find(name);
  if (it == vars_.end()) throw ConfigError("unknown parameter '" + name + "'");
  return it->second;
}

const Var& ParameterSet::Get(const std::string& name) const {
  auto it = vars_.find(name);
  if (it == vars_.end()) throw ConfigError("unknown parameter '" + name + "'");
  return it->second;
}

size_t ParameterSet::NumScalars() const {
  size_t n = 0;
  for (const auto& [name, var] : vars_) n += var.value().size();
  return n;
}

void ParameterSet::ZeroGrad() {
  for (auto& [name, var] : vars_) var.ZeroGrad();
}

ParameterSet ParameterSet::Clone() const {
  ParameterSet out;
  for (const auto& name : names_) out.Add(name, Get(name).value());
  out.moments_ = moments_;
  out.step_ = step_;
  return out;
}

std::map<std::string, Tensor> ParameterSet::Snapshot() const {
  std::map<std::string, Tensor> out;
  for (const auto& name : names_) out.emplace(name, Get(name).value());
  return out;
}

void ParameterSet::Restore(const std::map<std::string, Tensor>& snapshot) {
  if (snapshot.size() != names_.size()) {
    throw ConfigError("snapshot holds " + std::to_string(snapshot.size()) +
                      " parameters, expected " + std::to_string(names_.size()));
  }
  for (const auto& name : names_) {
    auto it = snapshot.find(name);
    if (it == snapshot.end()) {
      throw ConfigError("snapshot lacks parameter '" + name + "'");
    }
    Var& var = Get(name);
    if (!it->second.SameShape(var.value())) {
      throw ShapeError("parameter '" + name + "': snapshot shape " +
                       it->second.ShapeString() + " vs " +
                       var.value().ShapeString());
    }
    var.mutable_value() = it->second;
  }
}

MomentState& ParameterSet::moments(const std::string& name) {
  const Var& var = Get(name);
  auto& st = moments_[name];
  if (st.m.empty()) {
    st.m = Tensor(var.value().shape());
    st.v = Tensor(var.value().shape());
  }
  return st;
}

}  // namespace salience
