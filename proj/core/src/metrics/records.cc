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

#include "salience/metrics/records.h"

#include <algorithm>
#include <string>

#include "salience/errors.h"

namespace salience {

std::string_view ToString(Aggregation mode) {
  switch (mode) {
    case Aggregation::kFirst: return "first";
    case Aggregation::kLast: return "last";
    case Aggregation::kAverage: return "average";
    case Aggregation::kMedian: return "median";
  }
  return "first";
}

Aggregation ParseAggregation(std::string_view name) {
  if (name == "first") return Aggregation::kFirst;
  if (name == "last") return Aggregation::kLast;
  if (name == "average") return Aggregation::kAverage;
  if (name == "median") return Aggregation::kMedian;
  throw ConfigError("unknown aggregation mode '" + std::string(name) + "'");
}

double AggregateEntityScore(std::span<const double> scores, Aggregation mode) {
  if (scores.empty()) throw DomainError("cannot aggregate an empty mention list");
  switch (mode) {
    case Aggregation::kFirst:
      return scores.front();
    case Aggregation::kLast:
      return scores.back();
    case Aggregation::kAverage: {
      double s = 0.0;
      for (double v : scores) s += v;
      return s / static_cast<double>(scores.size());
    }
    case Aggregation::kMedian: {
      std::vector<double> v(scores.begin(), scores.end());
      std::sort(v.begin(), v.end());
      const size_t n = v.size();
      return n % 2 == 1 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
    }
  }
  return scores.front();
}

void Reaggregate(PredictionRecord& record, Aggregation mode) {
  auto& ms = record.mention_scores;
  std::stable_sort(ms.begin(), ms.end(),
                   [](const MentionScore& a, const MentionScore& b) {
                     return a.token_start < b.token_start ||
                            (a.token_start == b.token_start &&
                             a.token_end < b.token_end);
                   });
  std::vector<double> scores, logits;
  for (const auto& m : ms) {
    scores.push_back(m.score);
    logits.push_back(m.logit);
  }
  record.aggregated_score = AggregateEntityScore(scores, mode);
  record.aggregated_logit = AggregateEntityScore(logits, mode);
}

}  // namespace salience
