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

#ifndef SALIENCE_HEADS_PREDICTIONS_IO_H_
#define SALIENCE_HEADS_PREDICTIONS_IO_H_

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "salience/heads/predict.h"

namespace salience {

// One JSON object per line:
// {doc_id, entity_id, token_start, token_end, score, gold|null, head_kind}.
void WritePredictions(const PredictionSet& set, std::ostream& out);
void SavePredictions(const PredictionSet& set, const std::string& path);

// Restores mention rows; logits are reconstructed from the scores.
PredictionSet ReadPredictions(std::istream& in,
                              const std::string& source = "<stream>");
PredictionSet LoadPredictions(const std::string& path);

}  // namespace salience

#endif  // SALIENCE_HEADS_PREDICTIONS_IO_H_
