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

#ifndef SALIENCE_LAB_RUN_CONFIG_H_
#define SALIENCE_LAB_RUN_CONFIG_H_

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "salience/corpus/synthetic.h"
#include "salience/corpus/tokenizer.h"
#include "salience/distill/distill.h"
#include "salience/encoder/encoder.h"
#include "salience/heads/trainer.h"
#include "salience/metrics/metrics.h"

namespace salience::cli {

// Nested JSON document. Every key has a default, so overrides are checked
// against the type of the default they replace.
class RunConfig {
 public:
  RunConfig();

  // Accepts a plain config or a manifest (its "config" snapshot is used).
  void MergeFile(const std::string& path);
  // `key` is dotted, e.g. "encoder.d_model"; `value` is parsed as JSON and
  // falls back to a bare string.
  void Set(const std::string& key, const std::string& value);
  void Set(const std::string& key, nlohmann::json value);
  const nlohmann::json& Get(const std::string& key) const;
  const nlohmann::json& document() const { return doc_; }

  std::string Path(const std::string& key) const;
  uint64_t Seed() const;
  TokenizerSpec Tokenizer() const;
  SyntheticConfig Synthetic() const;
  std::array<double, 3> SplitRatios() const;
  EncoderConfig Encoder() const;
  TrainConfig Train() const;
  DistillConfig Distill() const;
  MetricsOptions Metrics() const;
  Aggregation AggregationMode() const;
  std::vector<std::pair<double, double>> SweepPairs() const;

 private:
  nlohmann::json doc_;
};

nlohmann::json DefaultRunConfig();

}  // namespace salience::cli

#endif  // SALIENCE_LAB_RUN_CONFIG_H_
