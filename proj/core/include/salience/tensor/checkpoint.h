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

#ifndef SALIENCE_TENSOR_CHECKPOINT_H_
#define SALIENCE_TENSOR_CHECKPOINT_H_

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>

#include "salience/tensor/parameters.h"

namespace salience {

inline constexpr char kCheckpointMagic[8] = {'S', 'A', 'L', 'C',
                                             'K', 'P', 'T', '\0'};
inline constexpr uint32_t kCheckpointVersion = 1;

// Parameter values only; optimizer state is not persisted.
void WriteCheckpoint(const ParameterSet& params, std::ostream& out);
ParameterSet ReadCheckpoint(std::istream& in, const std::string& source = "<stream>");

void SaveCheckpoint(const ParameterSet& params, const std::string& path);
ParameterSet LoadCheckpoint(const std::string& path);

}  // namespace salience

#endif  // SALIENCE_TENSOR_CHECKPOINT_H_
