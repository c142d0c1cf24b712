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

#ifndef SALIENCE_LAB_COMMANDS_H_
#define SALIENCE_LAB_COMMANDS_H_

#include "salience_lab/run_config.h"

namespace salience::cli {

void SynthGen(const RunConfig& config);
void TrainModel(const RunConfig& config);
void DistillStudent(const RunConfig& config);
void Evaluate(const RunConfig& config);
void Calibrate(const RunConfig& config);
void Analyze(const RunConfig& config);
void Score(const RunConfig& config);
void Speedup(const RunConfig& config);

}  // namespace salience::cli

#endif  // SALIENCE_LAB_COMMANDS_H_
