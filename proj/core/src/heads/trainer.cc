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

#include "salience/heads/trainer.h"

#include <cmath>
#include <string>

#include "salience/corpus/candidates.h"
#include "salience/errors.h"
#include "salience/heads/predict.h"
#include "salience/heads/scoring.h"
#include "salience/heads/selection.h"
#include "salience/metrics/metrics.h"
#include "salience/random.h"
#include "salience/tensor/adamw.h"
#include "salience/tensor/ops.h"

namespace salience {
namespace {

std::optional<double> ValidationAp(const SalienceModel& model,
                                   const std::vector<const Document*>& docs,
                                   Aggregation mode) {
  if (docs.empty()) return std::nullopt;
  const PredictionSet set = PredictDocuments(model, docs, mode);
  for (const auto& r : set.records) {
    if (r.gold == 1) return AveragePrecision(set.records).ap;
  }
  return std::nullopt;
}

}  // namespace

void TrainConfig::Validate() const {
  if (epochs == 0) throw ConfigError("epochs must be >= 1");
  if (batch_size == 0) throw ConfigError("batch_size must be >= 1");
  if (!(learning_rate > 0.0)) throw ConfigError("learning_rate must be > 0");
  if (reweight.enabled) reweight.Validate();
}

TrainingExample SupervisedExample(const Document& doc,
                                  bool non_overlapping_samples) {
  TrainingExample ex;
  ex.doc = &doc;
  for (const auto& c : GenerateCandidates(doc, CandidateMode::kTrain)) {
    ex.spans.push_back(c.span);
    ex.targets.push_back(static_cast<double>(*c.binary_label));
  }
  if (non_overlapping_samples) {
    TrainingExample kept;
    kept.doc = &doc;
    for (size_t i :
         SelectNonOverlapping(ex.spans, SelectionPolicy::kLongestFirst)) {
      kept.spans.push_back(ex.spans[i]);
      kept.targets.push_back(ex.targets[i]);
    }
    return kept;
  }
  return ex;
}

TrainResult RunTrainingLoop(SalienceModel model,
                            const std::vector<TrainingExample>& examples,
                            const std::vector<const Document*>& validation,
                            const LoopConfig& config,
                            const EpochCallback& on_epoch) {
  if (examples.empty()) throw DataError("no training documents");
  if (config.epochs == 0) throw ConfigError("epochs must be >= 1");
  if (config.batch_size == 0) throw ConfigError("batch_size must be >= 1");
  if (!(config.temperature > 0.0)) throw ConfigError("temperature must be > 0");
  if (config.reweight) config.reweight->Validate();
  AdamWConfig adamw;
  adamw.learning_rate = config.learning_rate;
  adamw.weight_decay = config.weight_decay;
  adamw.Validate();

  std::vector<std::vector<TokenId>> ids(examples.size());
  for (size_t i = 0; i < examples.size(); ++i) {
    ids[i] = model.DocumentIds(*examples[i].doc);
  }

  Rng order_rng(Rng::SplitMix(config.seed));
  Rng dropout_rng(Rng::SplitMix(config.seed + 1));
  Rng* dropout = model.encoder.dropout_rate > 0.0 ? &dropout_rng : nullptr;

  TrainResult result;
  std::optional<double> best_ap;
  auto best = model.params.Snapshot();
  std::vector<size_t> order(examples.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;

  for (size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    order_rng.Shuffle(order);
    EpochStats stats;
    stats.epoch = epoch;
    for (size_t b = 0; b < order.size(); b += config.batch_size) {
      const size_t e = std::min(order.size(), b + config.batch_size);
      std::vector<Var> logits;
      std::vector<double> targets;
      for (size_t k = b; k < e; ++k) {
        const TrainingExample& ex = examples[order[k]];
        if (ex.spans.empty()) continue;
        DocumentScoring s = ScoreDocument(model, ids[order[k]], ex.spans,
                                          PassMode::kTraining, dropout);
        if (s.scored.empty()) continue;
        logits.push_back(ops::Reshape(s.logits, {s.scored.size()}));
        for (size_t i : s.scored) targets.push_back(ex.targets[i]);
      }
      if (targets.empty()) continue;
      Var z = logits.size() == 1 ? logits[0] : ops::Concat(logits);
      if (config.temperature != 1.0) z = ops::Scale(z, 1.0 / config.temperature);
      const Var scores = ops::Sigmoid(z);
      std::vector<double> weights;
      if (config.reweight && config.reweight->enabled) {
        std::vector<int> labels;
        labels.reserve(targets.size());
        for (double t : targets) labels.push_back(t >= 0.5 ? 1 : 0);
        weights = ClassWeights(labels, config.reweight->alpha);
      }
      const Var loss = ComputeLoss(scores, targets, weights);
      const double value = loss.value()[0];
      if (!std::isfinite(value)) {
        throw NumericalError("non-finite loss in epoch " +
                             std::to_string(epoch));
      }
      model.params.ZeroGrad();
      Backward(loss);
      AdamWStep(model.params, adamw);
      stats.loss += value;
      stats.n_candidates += targets.size();
    }
    if (stats.n_candidates > 0) {
      stats.mean_loss = stats.loss / static_cast<double>(stats.n_candidates);
    }
    stats.valid_ap =
        ValidationAp(model, validation, config.validation_aggregation);
    const bool improved =
        stats.valid_ap && (!best_ap || *stats.valid_ap > *best_ap);
    if (improved || (!best_ap && epoch == config.epochs)) {
      if (stats.valid_ap) best_ap = stats.valid_ap;
      best = model.params.Snapshot();
      result.best_epoch = epoch;
    }
    result.history.push_back(stats);
    if (on_epoch) on_epoch(stats);
  }
  model.params.Restore(best);
  for (const auto& name : model.params.names()) model.params.Get(name).ClearGrad();
  result.model = std::move(model);
  return result;
}

TrainResult Train(const Corpus& corpus, EncoderConfig encoder,
                  const TrainConfig& config, const std::optional<Vocab>& vocab,
                  const EpochCallback& on_epoch) {
  config.Validate();
  const auto train_docs = corpus.DocumentsIn(Split::kTrain);
  if (train_docs.empty()) throw DataError("empty training split");
  if (config.max_len > 0) encoder.max_len = config.max_len;
  SalienceModel model = SalienceModel::Create(
      vocab ? *vocab : Vocab::Build(corpus), encoder, config.head_kind,
      config.seed);
  std::vector<TrainingExample> examples;
  examples.reserve(train_docs.size());
  for (const Document* doc : train_docs) {
    examples.push_back(SupervisedExample(*doc, config.non_overlapping_samples));
  }
  LoopConfig loop;
  loop.epochs = config.epochs;
  loop.batch_size = config.batch_size;
  loop.learning_rate = config.learning_rate;
  loop.weight_decay = config.weight_decay;
  loop.seed = config.seed;
  loop.reweight = config.reweight;
  loop.validation_aggregation = config.validation_aggregation;
  return RunTrainingLoop(std::move(model), examples,
                         corpus.DocumentsIn(Split::kValid), loop, on_epoch);
}

}  // namespace salience
