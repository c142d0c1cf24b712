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

#include "salience/metrics/metrics.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "salience/errors.h"

namespace salience {

PrfReport Prf1(std::span<const PredictionRecord> records, double threshold) {
  PrfReport r;
  r.threshold = threshold;
  for (const auto& rec : records) {
    const bool pred = rec.aggregated_score >= threshold;
    if (rec.gold == 1) {
      ++r.n_pos;
      pred ? ++r.tp : ++r.fn;
    } else {
      ++r.n_neg;
      if (pred) ++r.fp;
    }
  }
  if (r.tp + r.fp > 0) {
    r.precision = static_cast<double>(r.tp) / static_cast<double>(r.tp + r.fp);
  }
  if (r.n_pos > 0) {
    r.recall = static_cast<double>(r.tp) / static_cast<double>(r.n_pos);
  } else {
    r.recall_undefined = true;
  }
  if (r.precision + r.recall > 0.0) {
    r.f1 = 2.0 * r.precision * r.recall / (r.precision + r.recall);
  }
  return r;
}

namespace {

// Saturated scores can tie where the logits still differ.
bool RanksAbove(const PredictionRecord& x, const PredictionRecord& y) {
  if (x.aggregated_score != y.aggregated_score) {
    return x.aggregated_score > y.aggregated_score;
  }
  return x.aggregated_logit > y.aggregated_logit;
}

bool SameRank(const PredictionRecord& x, const PredictionRecord& y) {
  return !RanksAbove(x, y) && !RanksAbove(y, x);
}

}  // namespace

std::vector<size_t> RankOrder(std::span<const PredictionRecord> records) {
  std::vector<size_t> order(records.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    const auto& x = records[a];
    const auto& y = records[b];
    if (!SameRank(x, y)) return RanksAbove(x, y);
    if (x.doc_id != y.doc_id) return x.doc_id < y.doc_id;
    return x.entity_id < y.entity_id;
  });
  return order;
}

ApResult AveragePrecision(std::span<const PredictionRecord> records) {
  ApResult r;
  const auto order = RankOrder(records);
  size_t hits = 0;
  double sum = 0.0;
  for (size_t i = 0; i < order.size(); ++i) {
    if (records[order[i]].gold == 1) {
      ++hits;
      sum += static_cast<double>(hits) / static_cast<double>(i + 1);
    }
  }
  if (hits == 0) throw DomainError("AP undefined: no positive records");
  r.n_pos = hits;
  r.ap = sum / static_cast<double>(hits);
  for (size_t i = 0; i < order.size();) {
    size_t j = i;
    bool pos = false, neg = false;
    while (j < order.size() && SameRank(records[order[j]], records[order[i]])) {
      (records[order[j]].gold == 1 ? pos : neg) = true;
      ++j;
    }
    if (pos && neg) r.tie_across_classes = true;
    i = j;
  }
  return r;
}

TopKReport TopK(std::span<const PredictionRecord> records, size_t k) {
  if (k == 0) throw ConfigError("top-k needs k >= 1");
  std::map<std::string, std::vector<const PredictionRecord*>> by_doc;
  for (const auto& rec : records) by_doc[rec.doc_id].push_back(&rec);
  TopKReport r;
  r.k = k;
  double p_sum = 0.0, r_sum = 0.0;
  for (auto& [doc, recs] : by_doc) {
    const size_t positives = std::count_if(
        recs.begin(), recs.end(), [](const auto* p) { return p->gold == 1; });
    if (positives == 0) continue;
    std::stable_sort(recs.begin(), recs.end(), [](const auto* a, const auto* b) {
      if (!SameRank(*a, *b)) return RanksAbove(*a, *b);
      return a->entity_id < b->entity_id;
    });
    if (recs.size() < k) r.short_documents = true;
    const size_t top = std::min(k, recs.size());
    size_t hits = 0;
    for (size_t i = 0; i < top; ++i) hits += recs[i]->gold == 1 ? 1 : 0;
    p_sum += static_cast<double>(hits) / static_cast<double>(k);
    r_sum += static_cast<double>(hits) / static_cast<double>(positives);
    ++r.n_docs;
  }
  if (r.n_docs > 0) {
    r.p_at_k = p_sum / static_cast<double>(r.n_docs);
    r.r_at_k = r_sum / static_cast<double>(r.n_docs);
  }
  return r;
}

CalibrationBins Ece(std::span<const PredictionRecord> records, size_t m) {
  if (m == 0) throw ConfigError("ECE needs at least one bin");
  CalibrationBins out;
  out.m = m;
  out.n = records.size();
  out.bins.resize(m);
  std::vector<double> correct(m, 0.0), conf_sum(m, 0.0);
  for (size_t b = 0; b < m; ++b) {
    out.bins[b].lower = static_cast<double>(b) / static_cast<double>(m);
    out.bins[b].upper = static_cast<double>(b + 1) / static_cast<double>(m);
  }
  for (const auto& rec : records) {
    const double s = rec.aggregated_score;
    const double conf = std::max(s, 1.0 - s);
    const int pred = s >= 0.5 ? 1 : 0;
    const double scaled = std::ceil(conf * static_cast<double>(m));
    size_t b = scaled < 1.0 ? 0 : static_cast<size_t>(scaled) - 1;
    b = std::min(b, m - 1);
    ++out.bins[b].count;
    conf_sum[b] += conf;
    correct[b] += pred == rec.gold ? 1.0 : 0.0;
  }
  for (size_t b = 0; b < m; ++b) {
    auto& bin = out.bins[b];
    if (bin.count == 0) continue;
    const double c = static_cast<double>(bin.count);
    bin.accuracy = correct[b] / c;
    bin.confidence = conf_sum[b] / c;
    out.ece += c / static_cast<double>(out.n) *
               std::abs(bin.accuracy - bin.confidence);
  }
  return out;
}

double SpeedupEstimate(double salient_per_doc, double nonsalient_per_doc) {
  if (!(salient_per_doc >= 0.0) || !(nonsalient_per_doc >= 0.0)) {
    throw DomainError("entity counts must be non-negative");
  }
  return salient_per_doc + nonsalient_per_doc;
}

MetricsReport ComputeMetrics(std::span<const PredictionRecord> records,
                             const MetricsOptions& options) {
  MetricsReport report;
  report.prf = Prf1(records, options.threshold);
  if (report.prf.n_pos > 0) {
    report.ap = AveragePrecision(records);
    report.ap_defined = true;
  }
  report.calibration = Ece(records, options.bins);
  for (size_t k : options.ks) report.topk.push_back(TopK(records, k));
  return report;
}

}  // namespace salience
