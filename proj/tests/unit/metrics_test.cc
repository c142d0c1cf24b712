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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "json.hpp"
#include "salience/errors.h"
#include "salience/metrics/metrics.h"
#include "salience/metrics/records.h"
#include "salience/metrics/report_io.h"
#include "salience/random.h"

namespace salience {
namespace {

PredictionRecord Rec(std::string doc, std::string entity, double score,
                     int gold) {
  PredictionRecord r;
  r.doc_id = std::move(doc);
  r.entity_id = std::move(entity);
  r.mention_scores = {{0, 1, score, std::log(score) - std::log1p(-score)}};
  r.aggregated_score = score;
  r.aggregated_logit = r.mention_scores[0].logit;
  r.gold = gold;
  return r;
}

std::vector<PredictionRecord> Flat(const std::vector<double>& scores,
                                   const std::vector<int>& gold) {
  std::vector<PredictionRecord> out;
  for (size_t i = 0; i < scores.size(); ++i) {
    out.push_back(Rec("d", "e" + std::to_string(100 + i), scores[i], gold[i]));
  }
  return out;
}

// Area under the stepwise PR curve, enumerating every distinct threshold.
double BruteForceAp(const std::vector<PredictionRecord>& recs) {
  std::set<double, std::greater<>> thresholds;
  double n_pos = 0;
  for (const auto& r : recs) {
    thresholds.insert(r.aggregated_score);
    n_pos += r.gold;
  }
  double ap = 0.0, prev_recall = 0.0;
  for (double t : thresholds) {
    double tp = 0, predicted = 0;
    for (const auto& r : recs) {
      if (r.aggregated_score >= t) {
        ++predicted;
        tp += r.gold;
      }
    }
    const double recall = tp / n_pos;
    ap += (recall - prev_recall) * (tp / predicted);
    prev_recall = recall;
  }
  return ap;
}

TEST(Aggregation, FourModesOnThreeMentions) {
  const double s[] = {0.2, 0.8, 0.5};
  EXPECT_EQ(AggregateEntityScore(s, Aggregation::kFirst), 0.2);
  EXPECT_EQ(AggregateEntityScore(s, Aggregation::kLast), 0.5);
  EXPECT_DOUBLE_EQ(AggregateEntityScore(s, Aggregation::kAverage), 0.5);
  EXPECT_EQ(AggregateEntityScore(s, Aggregation::kMedian), 0.5);
  EXPECT_EQ(AggregateEntityScore(s), 0.2);
}

TEST(Aggregation, SingleMentionAllModesAgree) {
  const double s[] = {0.37};
  for (auto m : {Aggregation::kFirst, Aggregation::kLast, Aggregation::kAverage,
                 Aggregation::kMedian}) {
    EXPECT_EQ(AggregateEntityScore(s, m), 0.37);
  }
}

TEST(Aggregation, EvenMedianAveragesMiddlePair) {
  const double s[] = {0.9, 0.1, 0.4, 0.6};
  EXPECT_DOUBLE_EQ(AggregateEntityScore(s, Aggregation::kMedian), 0.5);
}

TEST(Aggregation, EmptyListIsAnError) {
  EXPECT_THROW(AggregateEntityScore({}, Aggregation::kFirst), DomainError);
}

TEST(Aggregation, ReaggregateRecomputesScoreAndLogit) {
  PredictionRecord r = Rec("d", "e", 0.2, 1);
  r.mention_scores.push_back({4, 5, 0.8, std::log(4.0)});
  Reaggregate(r, Aggregation::kLast);
  EXPECT_EQ(r.aggregated_score, 0.8);
  EXPECT_EQ(r.aggregated_logit, std::log(4.0));
}

TEST(Prf, AllCorrect) {
  const auto recs = Flat({0.9, 0.1, 0.7}, {1, 0, 1});
  const auto p = Prf1(recs, 0.5);
  EXPECT_EQ(p.precision, 1.0);
  EXPECT_EQ(p.recall, 1.0);
  EXPECT_EQ(p.f1, 1.0);
}

TEST(Prf, HandConfusionMatrix) {
  const auto p = Prf1(Flat({0.9, 0.6, 0.2}, {1, 0, 1}), 0.5);
  EXPECT_EQ(p.tp, 1u);
  EXPECT_EQ(p.fp, 1u);
  EXPECT_EQ(p.fn, 1u);
  EXPECT_DOUBLE_EQ(p.precision, 0.5);
  EXPECT_DOUBLE_EQ(p.recall, 0.5);
  EXPECT_DOUBLE_EQ(p.f1, 0.5);
}

TEST(Prf, ThresholdZeroRecallsEverything) {
  EXPECT_EQ(Prf1(Flat({0.0, 0.3, 0.2}, {1, 0, 1}), 0.0).recall, 1.0);
}

TEST(Prf, ScoreAtThresholdCountsAsPositive) {
  EXPECT_EQ(Prf1(Flat({0.5}, {1}), 0.5).tp, 1u);
}

TEST(Prf, NoGoldPositivesFlagsRecall) {
  const auto p = Prf1(Flat({0.9, 0.2}, {0, 0}), 0.5);
  EXPECT_TRUE(p.recall_undefined);
  EXPECT_EQ(p.recall, 0.0);
  EXPECT_EQ(p.f1, 0.0);
}

TEST(Prf, FlippedProblemScoresTheOtherClass) {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> s;
    std::vector<int> g;
    for (int i = 0; i < 20; ++i) {
      s.push_back(rng.Uniform(0.01, 0.99));
      g.push_back(rng.Bernoulli(0.4) ? 1 : 0);
    }
    const double t = 0.37;
    std::vector<double> s2;
    std::vector<int> g2;
    for (size_t i = 0; i < s.size(); ++i) {
      s2.push_back(1.0 - s[i]);
      g2.push_back(1 - g[i]);
    }
    const auto a = Prf1(Flat(s, g), t);
    const auto b = Prf1(Flat(s2, g2), 1.0 - t);
    // No score sits on the threshold, so the confusion matrix transposes.
    size_t tn = 0;
    for (size_t i = 0; i < s.size(); ++i) tn += s[i] < t && g[i] == 0;
    EXPECT_EQ(b.tp, tn);
    EXPECT_EQ(b.fp, a.fn);
    EXPECT_EQ(b.fn, a.fp);
  }
}

TEST(AveragePrecision, PerfectRanking) {
  EXPECT_EQ(AveragePrecision(Flat({0.9, 0.8, 0.1}, {1, 1, 0})).ap, 1.0);
}

TEST(AveragePrecision, HandExample) {
  const auto recs = Flat({0.9, 0.8, 0.7}, {1, 0, 1});
  EXPECT_NEAR(AveragePrecision(recs).ap, (1.0 / 1.0 + 2.0 / 3.0) / 2.0, 1e-15);
  EXPECT_NEAR(BruteForceAp(recs), 0.8333333333333334, 1e-15);
}

TEST(AveragePrecision, ReversedScoresHalve) {
  EXPECT_EQ(AveragePrecision(Flat({0.9, 0.1}, {1, 0})).ap, 1.0);
  EXPECT_EQ(AveragePrecision(Flat({0.1, 0.9}, {1, 0})).ap, 0.5);
}

TEST(AveragePrecision, NoPositivesIsUndefined) {
  try {
    AveragePrecision(Flat({0.4}, {0}));
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("AP undefined"), std::string::npos);
  }
}

TEST(AveragePrecision, TiesUseStableKeyOrderAndRaiseFlag) {
  // Same score; doc/entity order puts the negative first.
  std::vector<PredictionRecord> recs = {Rec("d", "b", 0.5, 1),
                                        Rec("d", "a", 0.5, 0)};
  const auto r = AveragePrecision(recs);
  EXPECT_TRUE(r.tie_across_classes);
  EXPECT_EQ(r.ap, 0.5);
  EXPECT_FALSE(AveragePrecision(Flat({0.5, 0.5}, {1, 1})).tie_across_classes);
}

TEST(AveragePrecision, SaturatedScoresFallBackToLogits) {
  std::vector<PredictionRecord> recs = {Rec("d", "a", 1.0, 0), Rec("d", "b", 1.0, 1)};
  recs[0].aggregated_logit = 40.0;
  recs[1].aggregated_logit = 45.0;
  const auto r = AveragePrecision(recs);
  EXPECT_EQ(r.ap, 1.0);
  EXPECT_FALSE(r.tie_across_classes);
  EXPECT_EQ(TopK(recs, 1).p_at_k, 1.0);
}

TEST(AveragePrecision, MatchesThresholdEnumerationOnRandomSets) {
  Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const size_t n = 1 + rng.UniformInt(50);
    std::vector<PredictionRecord> recs;
    std::set<double> used;
    bool any_pos = false;
    for (size_t i = 0; i < n; ++i) {
      double s;
      do s = rng.Uniform(); while (!used.insert(s).second);
      const int g = rng.Bernoulli(0.35) ? 1 : 0;
      any_pos = any_pos || g == 1;
      recs.push_back(Rec("doc" + std::to_string(rng.UniformInt(5)),
                         "e" + std::to_string(i), s, g));
    }
    if (!any_pos) recs[0].gold = 1;
    EXPECT_NEAR(AveragePrecision(recs).ap, BruteForceAp(recs), 1e-12);
  }
}

TEST(AveragePrecision, InvariantUnderTemperatureRescoring) {
  Rng rng(5);
  std::vector<PredictionRecord> recs;
  for (int i = 0; i < 40; ++i) {
    recs.push_back(Rec("d" + std::to_string(i % 4), "e" + std::to_string(i),
                       rng.Uniform(0.02, 0.98), rng.Bernoulli(0.3) ? 1 : 0));
  }
  recs[0].gold = 1;
  const double base = AveragePrecision(recs).ap;
  for (double t : {0.1, 0.5, 1.0, 2.0, 10.0}) {
    auto scaled = recs;
    for (auto& r : scaled) r.aggregated_score = 1.0 / (1.0 + std::exp(-r.aggregated_logit / t));
    EXPECT_EQ(AveragePrecision(scaled).ap, base) << "T=" << t;
  }
}

// Exhaustive per-document counting of hits among the k best.
TopKReport BruteTopK(const std::vector<PredictionRecord>& recs, size_t k) {
  std::map<std::string, std::vector<PredictionRecord>> docs;
  for (const auto& r : recs) docs[r.doc_id].push_back(r);
  TopKReport out;
  out.k = k;
  double p = 0, rr = 0;
  for (auto& [id, list] : docs) {
    int pos = 0;
    for (const auto& r : list) pos += r.gold;
    if (pos == 0) continue;
    int hits = 0;
    for (const auto& r : list) {
      size_t better = 0;
      for (const auto& o : list) better += o.aggregated_score > r.aggregated_score;
      if (better < k) hits += r.gold;
    }
    p += hits / static_cast<double>(k);
    rr += hits / static_cast<double>(pos);
    ++out.n_docs;
  }
  out.p_at_k = p / static_cast<double>(out.n_docs);
  out.r_at_k = rr / static_cast<double>(out.n_docs);
  return out;
}

TEST(TopK, HandCountedDocument) {
  const auto recs = Flat({0.9, 0.8, 0.7, 0.1}, {1, 0, 1, 1});
  const auto r = TopK(recs, 1);
  EXPECT_EQ(r.p_at_k, 1.0);
  EXPECT_DOUBLE_EQ(r.r_at_k, 1.0 / 3.0);
}

TEST(TopK, LargeKRecallsAll) {
  const auto recs = Flat({0.1, 0.8, 0.7}, {1, 0, 1});
  const auto r = TopK(recs, 5);
  EXPECT_EQ(r.r_at_k, 1.0);
  EXPECT_TRUE(r.short_documents);
  EXPECT_DOUBLE_EQ(r.p_at_k, 2.0 / 5.0);
}

TEST(TopK, DocumentsWithoutPositivesSkipped) {
  std::vector<PredictionRecord> recs = {Rec("a", "x", 0.9, 1),
                                        Rec("b", "y", 0.9, 0)};
  EXPECT_EQ(TopK(recs, 1).n_docs, 1u);
}

TEST(TopK, MatchesExhaustiveCountingAndRecallGrowsWithK) {
  Rng rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<PredictionRecord> recs;
    std::set<double> used;
    for (int i = 0; i < 30; ++i) {
      double s;
      do s = rng.Uniform(); while (!used.insert(s).second);
      recs.push_back(Rec("d" + std::to_string(rng.UniformInt(4)),
                         "e" + std::to_string(i), s, rng.Bernoulli(0.4)));
    }
    recs[0].gold = 1;
    double prev = 0.0;
    for (size_t k : {1, 2, 3, 5, 8}) {
      const auto got = TopK(recs, k), want = BruteTopK(recs, k);
      EXPECT_NEAR(got.p_at_k, want.p_at_k, 1e-12);
      EXPECT_NEAR(got.r_at_k, want.r_at_k, 1e-12);
      EXPECT_GE(got.r_at_k, prev);
      prev = got.r_at_k;
    }
  }
}

TEST(TopK, InvariantUnderTemperatureRescoring) {
  Rng rng(6);
  std::vector<PredictionRecord> recs;
  for (int i = 0; i < 30; ++i) {
    recs.push_back(Rec("d" + std::to_string(i % 3), "e" + std::to_string(i),
                       rng.Uniform(0.02, 0.98), rng.Bernoulli(0.4)));
  }
  for (size_t k : {1, 5}) {
    const auto base = TopK(recs, k);
    for (double t : {0.1, 0.5, 1.0, 2.0, 10.0}) {
      auto scaled = recs;
      for (auto& r : scaled) r.aggregated_score = 1.0 / (1.0 + std::exp(-r.aggregated_logit / t));
      const auto got = TopK(scaled, k);
      EXPECT_EQ(got.p_at_k, base.p_at_k);
      EXPECT_EQ(got.r_at_k, base.r_at_k);
    }
  }
}

TEST(Ece, PerfectConfidence) {
  EXPECT_EQ(Ece(Flat({1.0, 1.0, 1.0}, {1, 1, 1})).ece, 0.0);
}

TEST(Ece, SingleBinHandComputation) {
  std::vector<double> s(10, 0.7);
  std::vector<int> g = {1, 1, 1, 1, 1, 1, 1, 1, 1, 0};
  const auto c = Ece(Flat(s, g));
  EXPECT_NEAR(c.ece, 0.2, 1e-15);
  size_t occupied = 0;
  for (const auto& b : c.bins) occupied += b.count > 0;
  EXPECT_EQ(occupied, 1u);
}

TEST(Ece, CalibratedBinIsZero) {
  std::vector<double> s(10, 0.8);
  std::vector<int> g = {1, 1, 1, 1, 1, 1, 1, 1, 0, 0};
  EXPECT_NEAR(Ece(Flat(s, g)).ece, 0.0, 1e-15);
}

TEST(Ece, TwoBinHandComputation) {
  // Bin (0.9,1]: four records at 0.95, three correct.
  // Bin (0.6,0.7]: six records at 0.3, predicted negative, four correct.
  std::vector<double> s = {0.95, 0.95, 0.95, 0.95, 0.3, 0.3, 0.3, 0.3, 0.3, 0.3};
  std::vector<int> g = {1, 1, 1, 0, 0, 0, 0, 0, 1, 1};
  const double want = 0.4 * std::abs(0.75 - 0.95) + 0.6 * std::abs(4.0 / 6.0 - 0.7);
  EXPECT_NEAR(Ece(Flat(s, g)).ece, want, 1e-15);
}

TEST(Ece, BinsAreRightClosedAndPartitionTheRecords) {
  const auto c = Ece(Flat({0.7, 1.0, 0.5, 0.2}, {1, 1, 0, 0}), 10);
  ASSERT_EQ(c.bins.size(), 10u);
  EXPECT_EQ(c.bins[6].count, 1u);  // 0.7 -> (0.6, 0.7]
  EXPECT_EQ(c.bins[9].count, 1u);  // 1.0 -> top bin
  EXPECT_EQ(c.bins[4].count, 1u);  // 0.5 -> (0.4, 0.5]
  EXPECT_EQ(c.bins[7].count, 1u);  // 0.2 has confidence 0.8
  size_t total = 0;
  for (const auto& b : c.bins) total += b.count;
  EXPECT_EQ(total, c.n);
  EXPECT_GE(c.ece, 0.0);
  EXPECT_LE(c.ece, 1.0);
}

TEST(Speedup, KnownRatios) {
  EXPECT_NEAR(SpeedupEstimate(2.6, 17.4), 20.0, 1e-12);
  EXPECT_NEAR(SpeedupEstimate(3.0, 9.4), 12.4, 1e-12);
  EXPECT_NEAR(SpeedupEstimate(9.7, 18.2), 27.9, 1e-12);
}

TEST(Report, JsonCarriesAllFields) {
  const auto recs = Flat({0.9, 0.6, 0.2}, {1, 0, 1});
  MetricsReport rep = ComputeMetrics(recs, {.threshold = 0.5, .bins = 4, .ks = {1, 2}});
  rep.head_kind = "pooling";
  rep.split = "test";
  const auto j = nlohmann::json::parse(MetricsReportToJson(rep));
  EXPECT_EQ(j.at("head_kind"), "pooling");
  EXPECT_EQ(j.at("split"), "test");
  EXPECT_DOUBLE_EQ(j.at("f1").get<double>(), 0.5);
  EXPECT_EQ(j.at("bins").size(), 4u);
  EXPECT_EQ(j.at("topk").size(), 2u);
  EXPECT_EQ(j.at("topk")[0].at("k"), 1);
  EXPECT_TRUE(j.contains("ap"));
  EXPECT_TRUE(j.contains("ece"));
}

}  // namespace
}  // namespace salience
