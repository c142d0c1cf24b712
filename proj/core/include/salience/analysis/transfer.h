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

#ifndef SALIENCE_ANALYSIS_TRANSFER_H_
#define SALIENCE_ANALYSIS_TRANSFER_H_

#include <string>

#include "salience/corpus/types.h"
#include "salience/heads/model.h"
#include "salience/metrics/metrics.h"

namespace salience {

struct TransferReport {
  std::string source;
  std::string target;
  MetricsReport metrics;
};

// Plain evaluation of `model` on `split` of a corpus it was not trained on.
TransferReport TransferEval(const SalienceModel& model,
                            const std::string& source_name,
                            const std::string& target_name,
                            const Corpus& target, Split split = Split::kTest,
                            const MetricsOptions& options = {},
                            Aggregation mode = Aggregation::kFirst);

}  // namespace salience

#endif  // SALIENCE_ANALYSIS_TRANSFER_H_
