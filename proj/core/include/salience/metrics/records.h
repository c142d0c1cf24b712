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

#ifndef SALIENCE_METRICS_RECORDS_H_
#define SALIENCE_METRICS_RECORDS_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace salience {

enum class Aggregation { kFirst, kLast, kAverage, kMedian };

std::string_view ToString(Aggregation mode);
Aggregation ParseAggregation(std::string_view name);

// Scores must be ordered by document position. Throws DomainError if empty.
double AggregateEntityScore(std::span<const double> scores,
                            Aggregation mode = Aggregation::kFirst);

struct MentionScore {
  int64_t token_start = 0;
  int64_t token_end = 0;
  double score = 0.0;
  double logit = 0.0;
  bool operator==(const MentionScore&) const = default;
};

struct PredictionRecord {
  std::string doc_id;
  std::string entity_id;
  std::vector<MentionScore> mention_scores;
  double aggregated_score = 0.0;
  // Same aggregation applied to the mention logits.
  double aggregated_logit = 0.0;
  int gold = 0;
  bool operator==(const PredictionRecord&) const = default;
};

// Sorts mentions by position and recomputes both aggregates.
void Reaggregate(PredictionRecord& record, Aggregation mode);

}  // namespace salience

#endif  // SALIENCE_METRICS_RECORDS_H_
