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

#include "salience/analysis/transfer.h"

#include "salience/heads/predict.h"

namespace salience {

TransferReport TransferEval(const SalienceModel& model,
                            const std::string& source_name,
                            const std::string& target_name,
                            const Corpus& target, Split split,
                            const MetricsOptions& options, Aggregation mode) {
  const PredictionSet set = PredictCorpus(model, target, split, mode);
  TransferReport r;
  r.source = source_name;
  r.target = target_name;
  r.metrics = ComputeMetrics(set.records, options);
  r.metrics.head_kind = set.head_kind;
  r.metrics.split = std::string(ToString(split));
  return r;
}

}  // namespace salience
