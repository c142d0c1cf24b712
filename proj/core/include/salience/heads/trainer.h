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

#ifndef SALIENCE_HEADS_TRAINER_H_
#define SALIENCE_HEADS_TRAINER_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "salience/corpus/types.h"
#include "salience/heads/loss.h"
#include "salience/heads/model.h"
#include "salience/metrics/records.h"

namespace salience {

struct TrainConfig {
  size_t epochs = 20;
  size_t batch_size = 8;
  double learning_rate = 3e-4;
  double weight_decay = 0.01;
  uint64_t seed = 1;
  HeadKind head_kind = HeadKind::kPooling;
  ReweightConfig reweight;
  // 0 keeps the encoder's max_len.
  size_t max_len = 0;
  // Train only on a disjoint (longest-first) subset of each document.
  bool non_overlapping_samples = false;
  Aggregation validation_aggregation = Aggregation::kFirst;

  void Validate() const;
};

struct EpochStats {
  size_t epoch = 0;
  double loss = 0.0;  // raw sum consumed by the optimizer
  double mean_loss = 0.0;
  size_t n_candidates = 0;
  std::optional<double> valid_ap;
};

struct TrainResult {
  SalienceModel model;  // best validation AP, else the final epoch
  std::vector<EpochStats> history;
  size_t best_epoch = 0;
};

using EpochCallback = std::function<void(const EpochStats&)>;

// One document with its training spans and (hard or soft) targets.
struct TrainingExample {
  const Document* doc = nullptr;
  std::vector<MentionSpan> spans;
  std::vector<double> targets;
};

struct LoopConfig {
  size_t epochs = 20;
  size_t batch_size = 8;
  double learning_rate = 3e-4;
  double weight_decay = 0.01;
  uint64_t seed = 1;
  // Disabled for soft targets.
  std::optional<ReweightConfig> reweight;
  // Student temperature applied to logits inside the loss.
  double temperature = 1.0;
  Aggregation validation_aggregation = Aggregation::kFirst;
};

// Shared optimization loop for supervised training and distillation.
TrainResult RunTrainingLoop(SalienceModel model,
                            const std::vector<TrainingExample>& examples,
                            const std::vector<const Document*>& validation,
                            const LoopConfig& config,
                            const EpochCallback& on_epoch = {});

// Builds the vocabulary from `corpus` unless one is given.
TrainResult Train(const Corpus& corpus, EncoderConfig encoder,
                  const TrainConfig& config,
                  const std::optional<Vocab>& vocab = std::nullopt,
                  const EpochCallback& on_epoch = {});

// Labeled spans of a document's train-mode candidates.
TrainingExample SupervisedExample(const Document& doc,
                                  bool non_overlapping_samples = false);

}  // namespace salience

#endif  // SALIENCE_HEADS_TRAINER_H_
