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

#ifndef SALIENCE_DISTILL_ENSEMBLE_H_
#define SALIENCE_DISTILL_ENSEMBLE_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "salience/corpus/types.h"
#include "salience/heads/model.h"
#include "salience/heads/predict.h"
#include "salience/heads/trainer.h"

namespace salience {

struct TeacherEnsemble {
  std::vector<SalienceModel> members;
};

struct MemberRecipe {
  std::string name;
  HeadKind head = HeadKind::kPooling;
  bool non_overlapping_samples = false;
  uint64_t seed_offset = 0;
};

// Pooling, Pooling on disjoint samples, PoolingWithTags, Tagging.
std::vector<MemberRecipe> DefaultEnsembleRecipe();
// `n` Pooling members differing only in seed.
std::vector<MemberRecipe> SeedVariedRecipe(size_t n);

using MemberCallback =
    std::function<void(const MemberRecipe&, const TrainResult&)>;

TeacherEnsemble TrainEnsemble(const Corpus& corpus,
                              const EncoderConfig& encoder,
                              const TrainConfig& base,
                              const std::vector<MemberRecipe>& recipe,
                              const MemberCallback& on_member = {});

// sigmoid(logit(p) / T); exactly p when T is 1.
double ApplyTeacherTemperature(double p, double temperature);

// Per-candidate mean of member scores over eval-mode candidates, reduced in
// member order. A candidate scored by no member is omitted.
// Mean member score per span; unset when no member could score it.
std::vector<std::optional<double>> EnsembleMeanScores(
    const TeacherEnsemble& ensemble, const Document& doc,
    std::span<const MentionSpan> spans, size_t* encode_passes = nullptr);

PredictionSet EnsemblePredictDocuments(const TeacherEnsemble& ensemble,
                                       const std::vector<const Document*>& docs,
                                       Aggregation mode = Aggregation::kFirst);

}  // namespace salience

#endif  // SALIENCE_DISTILL_ENSEMBLE_H_
