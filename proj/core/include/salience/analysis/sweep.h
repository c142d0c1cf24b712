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

#ifndef SALIENCE_ANALYSIS_SWEEP_H_
#define SALIENCE_ANALYSIS_SWEEP_H_

#include <functional>
#include <utility>
#include <vector>

#include "salience/corpus/types.h"
#include "salience/distill/distill.h"

namespace salience {

struct SweepPoint {
  double t_teacher = 1.0;
  double t_student = 1.0;
  double ece = 0.0;
  double ap = 0.0;
};

using SweepCallback = std::function<void(const SweepPoint&)>;

// One distillation per pair, scored on the test split. `base` supplies
// everything except the two temperatures. Output follows input order.
std::vector<SweepPoint> TemperatureSweep(
    const TeacherEnsemble& ensemble, const EncoderConfig& student,
    const DistillConfig& base,
    const std::vector<std::pair<double, double>>& pairs, const Corpus& corpus,
    size_t bins = 10, const SweepCallback& on_point = {});

}  // namespace salience

#endif  // SALIENCE_ANALYSIS_SWEEP_H_
