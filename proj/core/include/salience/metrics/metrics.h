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

#ifndef SALIENCE_METRICS_METRICS_H_
#define SALIENCE_METRICS_METRICS_H_

#include <span>
#include <string>
#include <vector>

#include "salience/metrics/records.h"

namespace salience {

struct PrfReport {
  double threshold = 0.5;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  size_t n_pos = 0;
  size_t n_neg = 0;
  size_t tp = 0;
  size_t fp = 0;
  size_t fn = 0;
  // Set when there are no gold positives; recall is then reported as 0.
  bool recall_undefined = false;
};

// Predicted positive iff aggregated_score >= threshold.
PrfReport Prf1(std::span<const PredictionRecord> records, double threshold);

// Record indices sorted by (score desc, doc_id, entity_id).
std::vector<size_t> RankOrder(std::span<const PredictionRecord> records);

struct ApResult {
  double ap = 0.0;
  size_t n_pos = 0;
  // Some group of equal scores holds both a positive and a negative.
  bool tie_across_classes = false;
};

// Non-interpolated rank-sum AP. Throws DomainError without positives.
ApResult AveragePrecision(std::span<const PredictionRecord> records);

struct TopKReport {
  size_t k = 0;
  double p_at_k = 0.0;
  double r_at_k = 0.0;
  size_t n_docs = 0;
  // Some scored document has fewer than k entities.
  bool short_documents = false;
};

// Macro average over documents with at least one gold positive.
TopKReport TopK(std::span<const PredictionRecord> records, size_t k);

struct CalibrationBin {
  double lower = 0.0;
  double upper = 0.0;
  size_t count = 0;
  double accuracy = 0.0;
  double confidence = 0.0;
};

struct CalibrationBins {
  size_t m = 10;
  size_t n = 0;
  std::vector<CalibrationBin> bins;
  double ece = 0.0;
};

// Confidence is max(s, 1-s); bins are right-closed on [0,1].
CalibrationBins Ece(std::span<const PredictionRecord> records, size_t m = 10);

// One standard encode per entity against one pooling encode per document.
double SpeedupEstimate(double salient_per_doc, double nonsalient_per_doc);

struct MetricsOptions {
  double threshold = 0.5;
  size_t bins = 10;
  std::vector<size_t> ks = {1, 5};
};

struct MetricsReport {
  std::string head_kind;
  std::string split;
  PrfReport prf;
  // Unset when the record set has no positives.
  bool ap_defined = false;
  ApResult ap;
  CalibrationBins calibration;
  std::vector<TopKReport> topk;
};

MetricsReport ComputeMetrics(std::span<const PredictionRecord> records,
                             const MetricsOptions& options = {});

}  // namespace salience

#endif  // SALIENCE_METRICS_METRICS_H_
