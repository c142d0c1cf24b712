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

// Acceptance runner. Prints one PASS/FAIL line per criterion; criteria can be
// selected by number on the command line.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "salience/analysis/strata.h"
#include "salience/corpus/candidates.h"
#include "salience/corpus/split.h"
#include "salience/corpus/synthetic.h"
#include "salience/distill/distill.h"
#include "salience/distill/ensemble.h"
#include "salience/encoder/candidate_tags.h"
#include "salience/errors.h"
#include "salience/heads/loss.h"
#include "salience/heads/model.h"
#include "salience/heads/predict.h"
#include "salience/heads/scoring.h"
#include "salience/heads/selection.h"
#include "salience/heads/trainer.h"
#include "salience/metrics/metrics.h"
#include "salience/random.h"
#include "salience/tensor/checkpoint.h"
#include "salience/tensor/grad_check.h"
#include "salience/tensor/ops.h"

namespace salience {
namespace {

// Tolerances.
constexpr double kGradTolerance = 1e-4;
constexpr double kGradSeconds = 60.0;
constexpr double kApOracleTolerance = 1e-12;
constexpr double kReweightTolerance = 1e-4;
constexpr double kPoolingTolerance = 1e-12;
constexpr double kLearnableAp = 0.90;
constexpr size_t kLearnEpochs = 20;
constexpr double kLearnSeconds = 300.0;
constexpr double kStudentGap = 0.05;
constexpr double kEnsembleSlack = 0.02;
constexpr size_t kCalibrationSeeds = 5;
constexpr size_t kCalibrationWins = 4;

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

std::string Fmt(const char* format, double a, double b = 0, double c = 0,
                double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c, d);
  return buf;
}

MentionSpan Span(int64_t b, int64_t e) {
  MentionSpan s;
  s.token_start = b;
  s.token_end = e;
  return s;
}

PredictionRecord Record(std::string doc, std::string entity, double logit,
                        int gold) {
  PredictionRecord r;
  r.doc_id = std::move(doc);
  r.entity_id = std::move(entity);
  r.aggregated_logit = logit;
  r.aggregated_score = 1.0 / (1.0 + std::exp(-logit));
  r.mention_scores = {{0, 1, r.aggregated_score, logit}};
  r.gold = gold;
  return r;
}

std::vector<PredictionRecord> RandomSet(Rng& rng, bool ensure_positive) {
  const size_t n = 1 + rng.UniformInt(50);
  const size_t docs = 1 + rng.UniformInt(6);
  std::vector<PredictionRecord> out;
  for (size_t i = 0; i < n; ++i) {
    out.push_back(Record("doc" + std::to_string(rng.UniformInt(docs)),
                         "e" + std::to_string(i), rng.Uniform(-4.0, 4.0),
                         rng.Bernoulli(0.35) ? 1 : 0));
  }
  if (ensure_positive) out[rng.UniformInt(n)].gold = 1;
  return out;
}

// Area under the step PR curve, one step per distinct score threshold.
double ThresholdAp(const std::vector<PredictionRecord>& recs) {
  std::set<double, std::greater<>> thresholds;
  double n_pos = 0;
  for (const auto& r : recs) {
    thresholds.insert(r.aggregated_score);
    n_pos += r.gold;
  }
  double ap = 0, last_recall = 0;
  for (double t : thresholds) {
    double tp = 0, predicted = 0;
    for (const auto& r : recs) {
      if (r.aggregated_score >= t) {
        ++predicted;
        tp += r.gold;
      }
    }
    ap += (tp / n_pos - last_recall) * tp / predicted;
    last_recall = tp / n_pos;
  }
  return ap;
}

std::pair<double, double> CountTopK(const std::vector<PredictionRecord>& recs,
                                    size_t k) {
  std::map<std::string, std::vector<const PredictionRecord*>> docs;
  for (const auto& r : recs) docs[r.doc_id].push_back(&r);
  double p = 0, rr = 0, n = 0;
  for (const auto& [id, list] : docs) {
    double pos = 0, hits = 0;
    for (const auto* r : list) pos += r->gold;
    if (pos == 0) continue;
    for (const auto* r : list) {
      size_t above = 0;
      for (const auto* o : list) above += o->aggregated_score > r->aggregated_score;
      if (above < k) hits += r->gold;
    }
    p += hits / static_cast<double>(k);
    rr += hits / pos;
    ++n;
  }
  return {p / n, rr / n};
}

// ---------------------------------------------------------------------------

Outcome GradientFidelity() {
  const auto t0 = Clock::now();
  std::vector<std::string> words = Vocab().words();
  while (words.size() < 50) words.push_back("w" + std::to_string(words.size()));
  const Vocab vocab = Vocab::FromWords(words);
  EncoderConfig enc;
  enc.d_model = 16;
  enc.n_layers = 1;
  enc.n_heads = 2;
  enc.d_ff = 32;
  enc.max_len = 32;
  Rng rng(11);
  std::vector<TokenId> ids(12);
  for (auto& t : ids) t = static_cast<TokenId>(kNumReservedIds + rng.UniformInt(50 - kNumReservedIds));
  const std::vector<MentionSpan> spans = {Span(1, 3), Span(7, 9)};
  const double targets[] = {1.0, 0.0};
  const int batch_labels[] = {1, 0, 0, 0};
  const auto w = ClassWeights(batch_labels, 0.01);
  const double weights[] = {w[0], w[1]};
  double worst = 0;
  std::string where;
  for (HeadKind head : {HeadKind::kTagging, HeadKind::kPooling,
                        HeadKind::kPoolingWithTags, HeadKind::kStandardCls}) {
    SalienceModel model = SalienceModel::Create(vocab, enc, head, 3);
    const auto loss = [&] {
      const auto s = ScoreDocument(model, ids, spans, PassMode::kTraining);
      return ComputeLoss(ops::Sigmoid(s.logits), targets, weights);
    };
    GradCheckOptions opt;
    opt.tolerance = kGradTolerance;
    const auto r = GradCheck(loss, model.params, opt);
    if (r.max_relative_error >= worst) {
      worst = r.max_relative_error;
      where = std::string(ToString(head)) + ":" + r.worst_parameter;
    }
  }
  const double secs = Seconds(t0);
  return {worst < kGradTolerance && secs < kGradSeconds,
          Fmt("max rel err %.2e", worst) + " at " + where +
              Fmt(", %.1fs", secs)};
}

Outcome MetricOracles() {
  Rng rng(2024);
  double ap_gap = 0, topk_gap = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto recs = RandomSet(rng, true);
    ap_gap = std::max(ap_gap, std::abs(AveragePrecision(recs).ap - ThresholdAp(recs)));
    for (size_t k : {1, 2, 5}) {
      const auto got = TopK(recs, k);
      const auto [p, r] = CountTopK(recs, k);
      topk_gap = std::max({topk_gap, std::abs(got.p_at_k - p), std::abs(got.r_at_k - r)});
    }
  }
  // Dyadic scores keep the hand values exact.
  std::vector<PredictionRecord> one;
  for (int g : {1, 1, 0, 0}) one.push_back(Record("d", "x", 0, g));
  for (auto& r : one) r.aggregated_score = 0.75;
  const double single = Ece(one, 1).ece;  // |0.5 - 0.75|
  std::vector<PredictionRecord> two;
  for (int g : {1, 0, 0, 0}) two.push_back(Record("d", "x", 0, g));
  for (auto& r : two) r.aggregated_score = 0.625;
  for (int i = 0; i < 4; ++i) two.push_back(Record("d", "y", 0, 0));
  for (size_t i = 4; i < 8; ++i) two[i].aggregated_score = 0.125;
  const double twobin = Ece(two, 4).ece;  // 0.5*0.375 + 0.5*0.125
  const bool pass = ap_gap <= kApOracleTolerance && topk_gap <= kApOracleTolerance &&
                    single == 0.25 && twobin == 0.25;
  return {pass, Fmt("AP gap %.1e, top-k gap %.1e, ECE %.4f/%.4f", ap_gap,
                    topk_gap, single, twobin)};
}

Outcome RankInvariance() {
  Rng rng(99);
  size_t sets = 0, changed = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto recs = RandomSet(rng, true);
    const double ap = AveragePrecision(recs).ap;
    const auto t1 = TopK(recs, 1), t3 = TopK(recs, 3);
    for (double t : {0.1, 0.5, 1.0, 2.0, 10.0}) {
      auto scaled = recs;
      for (auto& r : scaled) r.aggregated_score = TemperatureScore(r.aggregated_logit, t);
      const auto s1 = TopK(scaled, 1), s3 = TopK(scaled, 3);
      ++sets;
      changed += AveragePrecision(scaled).ap != ap || s1.p_at_k != t1.p_at_k ||
                 s1.r_at_k != t1.r_at_k || s3.p_at_k != t3.p_at_k ||
                 s3.r_at_k != t3.r_at_k;
    }
  }
  return {changed == 0, std::to_string(sets) + " rescored sets, " +
                            std::to_string(changed) + " differ"};
}

Outcome Reweighting() {
  const int skewed[] = {0, 0, 0, 0, 1};
  const int balanced[] = {0, 1, 1, 0};
  const auto w = ClassWeights(skewed, 0.01);
  const auto b = ClassWeights(balanced, 0.01);
  bool pass = std::abs(w[0] - 1.0) <= kReweightTolerance &&
              std::abs(w[4] - 3.9703) <= kReweightTolerance;
  for (size_t i = 0; i < 4; ++i) pass = pass && w[i] == w[0];
  for (double v : b) pass = pass && v == 1.0;
  return {pass, Fmt("weights {%.4f, %.4f}, balanced %.1f", w[0], w[4], b[0])};
}

Outcome PoolingSinglePass() {
  SyntheticConfig sc;
  sc.n_docs = 6;
  sc.seed = 8;
  const Corpus corpus = SynthGenerate(sc);
  EncoderConfig enc;
  enc.d_model = 16;
  enc.n_layers = 2;
  enc.n_heads = 2;
  enc.d_ff = 32;
  enc.max_len = 128;
  const auto model =
      SalienceModel::Create(Vocab::Build(corpus), enc, HeadKind::kPooling, 4);
  double worst = 0;
  size_t overlapping = 0, total = 0;
  for (const auto& doc : corpus.documents) {
    const auto ids = model.DocumentIds(doc);
    std::vector<MentionSpan> spans;
    for (const auto& c : GenerateCandidates(doc, CandidateMode::kEval)) spans.push_back(c.span);
    const int64_t n = static_cast<int64_t>(doc.words.size());
    spans.push_back(Span(0, std::min<int64_t>(4, n)));  // overlaps the lead
    spans.push_back(Span(1, std::min<int64_t>(3, n)));
    const auto all = ScoreDocument(model, ids, spans, PassMode::kInference);
    for (size_t i = 0; i < spans.size(); ++i) {
      for (size_t j = 0; j < spans.size(); ++j) {
        if (i != j && spans[i].token_start < spans[j].token_end &&
            spans[j].token_start < spans[i].token_end) {
          ++overlapping;
          break;
        }
      }
      const MentionSpan one[] = {spans[i]};
      const auto single = ScoreDocument(model, ids, one, PassMode::kInference);
      worst = std::max(worst, std::abs(all.logits.value()[i] - single.logits.value()[0]));
      ++total;
    }
  }
  return {worst <= kPoolingTolerance && overlapping > 0,
          Fmt("max |diff| %.1e over %.0f candidates (%.0f overlapping)", worst,
              static_cast<double>(total), static_cast<double>(overlapping))};
}

Outcome TaggingOverlap() {
  std::vector<std::string> words = Vocab().words();
  for (int i = 0; i < 20; ++i) words.push_back("t" + std::to_string(i));
  EncoderConfig enc;
  enc.d_model = 16;
  enc.n_layers = 1;
  enc.n_heads = 2;
  enc.d_ff = 32;
  enc.max_len = 64;
  const auto model = SalienceModel::Create(Vocab::FromWords(words), enc,
                                           HeadKind::kTagging, 2);
  std::vector<TokenId> ids(20);
  for (size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<TokenId>(kNumReservedIds + i);
  const std::vector<MentionSpan> spans = {Span(0, 3), Span(1, 2), Span(2, 5),
                                          Span(8, 9), Span(8, 10), Span(15, 17)};
  bool raised = false;
  try {
    InsertCandidateTags(ids, spans);
  } catch (const OverlapError&) {
    raised = true;
  }
  const auto passes = PartitionNonOverlapping(spans);
  std::vector<int> hits(spans.size(), 0);
  bool disjoint = true;
  for (const auto& pass : passes) {
    std::vector<MentionSpan> subset;
    for (size_t i : pass) {
      ++hits[i];
      subset.push_back(spans[i]);
    }
    try {
      InsertCandidateTags(ids, subset);
    } catch (const OverlapError&) {
      disjoint = false;
    }
  }
  const auto scored = InferLogits(model, ids, spans);
  bool all_scored = scored.dropped.empty();
  for (const auto& l : scored.logits) all_scored = all_scored && l.has_value();
  const bool once = std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; });
  return {raised && disjoint && once && all_scored &&
              scored.encode_passes == passes.size(),
          std::to_string(passes.size()) + " passes, " +
              (once ? "each candidate once" : "coverage broken") +
              (all_scored ? ", all scored" : ", unscored candidates")};
}

// Shared synthetic setup for the training experiments.
struct Experiment {
  Corpus corpus;
  EncoderConfig encoder;
  TrainConfig train;
};

const Experiment& Setup() {
  static const Experiment e = [] {
    Experiment x;
    SyntheticConfig sc;
    sc.n_docs = 275;
    sc.seed = 1;
    // 200 train, 25 validation for epoch selection, 50 test.
    x.corpus = SplitCorpus(SynthGenerate(sc),
                           {200.0 / 275.0, 25.0 / 275.0, 50.0 / 275.0}, 1);
    x.encoder.d_model = 32;
    x.encoder.n_layers = 2;
    x.encoder.n_heads = 4;
    x.encoder.d_ff = 64;
    x.encoder.max_len = 128;
    x.train.epochs = kLearnEpochs;
    x.train.batch_size = 8;
    x.train.learning_rate = 2e-3;
    return x;
  }();
  return e;
}

double TestAp(const SalienceModel& model) {
  return AveragePrecision(PredictCorpus(model, Setup().corpus, Split::kTest).records).ap;
}

Outcome Learnability() {
  const auto& e = Setup();
  std::string detail;
  bool pass = true;
  for (HeadKind head : {HeadKind::kTagging, HeadKind::kPooling}) {
    const auto t0 = Clock::now();
    TrainConfig tc = e.train;
    tc.head_kind = head;
    const auto r = Train(e.corpus, e.encoder, tc);
    const double ap = TestAp(r.model), secs = Seconds(t0);
    pass = pass && ap >= kLearnableAp && secs < kLearnSeconds;
    if (!detail.empty()) detail += "; ";
    detail += std::string(ToString(head)) + Fmt(" AP %.4f in %.0fs", ap, secs);
  }
  return {pass, detail};
}

const TeacherEnsemble& Teachers(std::vector<double>* member_aps = nullptr) {
  static std::vector<double> aps;
  static const TeacherEnsemble ensemble = [] {
    const auto& e = Setup();
    return TrainEnsemble(e.corpus, e.encoder, e.train, DefaultEnsembleRecipe(),
                         [](const MemberRecipe&, const TrainResult& r) {
                           aps.push_back(TestAp(r.model));
                         });
  }();
  if (member_aps) *member_aps = aps;
  return ensemble;
}

DistillConfig StudentConfig(double t_teacher, double t_student, uint64_t seed) {
  const auto& e = Setup();
  DistillConfig dc;
  dc.t_teacher = t_teacher;
  dc.t_student = t_student;
  dc.epochs = e.train.epochs;
  dc.batch_size = e.train.batch_size;
  dc.learning_rate = e.train.learning_rate;
  dc.seed = seed;
  return dc;
}

Outcome DistillationEfficacy() {
  const auto& e = Setup();
  std::vector<double> members;
  const auto& ensemble = Teachers(&members);
  const double ens_ap = AveragePrecision(
      EnsemblePredictDocuments(ensemble, e.corpus.DocumentsIn(Split::kTest)).records).ap;
  const double best = *std::max_element(members.begin(), members.end());
  const auto student = DistillTrain(e.encoder, BuildTransferSet(e.corpus, ensemble, 1.0),
                                    e.corpus, StudentConfig(1.0, 1.0, 1));
  const double st_ap = TestAp(student.model);
  return {std::abs(st_ap - ens_ap) <= kStudentGap && ens_ap >= best - kEnsembleSlack,
          Fmt("ensemble AP %.4f, best member %.4f, student %.4f", ens_ap, best, st_ap)};
}

Outcome CalibrationDirection() {
  const auto& e = Setup();
  const auto& ensemble = Teachers();
  const double teacher_ece = Ece(
      EnsemblePredictDocuments(ensemble, e.corpus.DocumentsIn(Split::kTest)).records).ece;
  const auto sharp = BuildTransferSet(e.corpus, ensemble, 0.2);
  const auto soft = BuildTransferSet(e.corpus, ensemble, 2.0);
  size_t wins = 0;
  std::string detail;
  for (uint64_t seed = 1; seed <= kCalibrationSeeds; ++seed) {
    const auto a = DistillTrain(e.encoder, sharp, e.corpus, StudentConfig(0.2, 1.0, seed));
    const auto b = DistillTrain(e.encoder, soft, e.corpus, StudentConfig(2.0, 2.0, seed));
    const double ea = Ece(PredictCorpus(a.model, e.corpus, Split::kTest).records).ece;
    const double eb = Ece(PredictCorpus(b.model, e.corpus, Split::kTest).records).ece;
    wins += ea < eb;
    detail += Fmt(" %.3f/%.3f", ea, eb);
  }
  return {wins >= kCalibrationWins, std::to_string(wins) + "/" +
                                        std::to_string(kCalibrationSeeds) +
                                        " seeds favour (0.2,1); ECE" + detail +
                                        Fmt("; ensemble ECE %.3f", teacher_ece)};
}

Outcome SpeedupTable() {
  const double a = SpeedupEstimate(2.6, 17.4), b = SpeedupEstimate(3.0, 9.4),
               c = SpeedupEstimate(9.7, 18.2);
  const auto shown = [](double v) { return Fmt("%.1f", v); };
  return {shown(a) == "20.0" && shown(b) == "12.4" && shown(c) == "27.9",
          shown(a) + " / " + shown(b) + " / " + shown(c)};
}

Outcome StratificationSanity() {
  SyntheticConfig sc;
  sc.n_docs = 200;
  sc.seed = 3;
  sc.salient_rule.min_frequency = 1 << 20;  // position rule only
  const Corpus corpus = SplitCorpus(SynthGenerate(sc), {0.5, 0.0, 0.5}, 3);
  EncoderConfig enc;
  enc.d_model = 8;
  enc.n_layers = 1;
  enc.n_heads = 2;
  enc.d_ff = 16;
  enc.max_len = 128;
  const auto model = SalienceModel::Create(Vocab::Build(corpus), enc, HeadKind::kPooling, 1);
  const auto records = PredictCorpus(model, corpus, Split::kTest).records;
  const auto sum = [](const std::vector<StratumReport>& s) {
    size_t n = 0;
    for (const auto& r : s) n += r.n;
    return n;
  };
  const auto pos = StratifyByPosition(records, corpus);
  const auto freq = StratifyByFrequency(records, corpus);
  const auto [seen, unseen] = SeenUnseen(records, corpus, corpus);
  const bool sums = sum(pos) == records.size() && sum(freq) == records.size() &&
                    seen.n + unseen.n == records.size();
  return {pos.front().positive_rate > pos.back().positive_rate && sums,
          Fmt("first bucket rate %.3f vs last %.3f, ", pos.front().positive_rate,
              pos.back().positive_rate) +
              (sums ? "counts sum to " : "counts do not sum to ") +
              std::to_string(records.size())};
}

Outcome DeterminismAndPersistence() {
  SyntheticConfig sc;
  sc.n_docs = 16;
  sc.seed = 5;
  const Corpus corpus = SplitCorpus(SynthGenerate(sc), {0.5, 0.25, 0.25}, 5);
  EncoderConfig enc;
  enc.d_model = 8;
  enc.n_layers = 1;
  enc.n_heads = 2;
  enc.d_ff = 16;
  enc.max_len = 128;
  TrainConfig tc;
  tc.epochs = 2;
  tc.learning_rate = 1e-2;
  bool identical = true, round_trip = true;
  const auto dir = std::filesystem::temp_directory_path() /
                   ("salience_acceptance_" + std::to_string(::getpid()));
  for (HeadKind head : {HeadKind::kPooling, HeadKind::kTagging}) {
    tc.head_kind = head;
    const auto a = Train(corpus, enc, tc), b = Train(corpus, enc, tc);
    std::stringstream sa, sb, sc2;
    WriteCheckpoint(a.model.params, sa);
    WriteCheckpoint(b.model.params, sb);
    identical = identical && sa.str() == sb.str();
    a.model.Save(dir.string());
    const auto loaded = SalienceModel::Load(dir.string());
    WriteCheckpoint(loaded.params, sc2);
    round_trip = round_trip && sc2.str() == sa.str();
    const auto pa = PredictCorpus(a.model, corpus, Split::kTest).mentions;
    const auto pl = PredictCorpus(loaded, corpus, Split::kTest).mentions;
    round_trip = round_trip && pa.size() == pl.size();
    for (size_t i = 0; round_trip && i < pa.size(); ++i) {
      round_trip = pa[i].logit == pl[i].logit && pa[i].score == pl[i].score;
    }
    std::filesystem::remove_all(dir);
  }
  return {identical && round_trip,
          std::string(identical ? "checkpoints bit-identical" : "checkpoints differ") +
              (round_trip ? ", save/load exact" : ", save/load mismatch")};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace salience

int main(int argc, char** argv) {
  using namespace salience;
  const std::vector<Criterion> criteria = {
      {1, "gradient fidelity", GradientFidelity},
      {2, "metric oracle equivalence", MetricOracles},
      {3, "rank invariance", RankInvariance},
      {4, "reweighting", Reweighting},
      {5, "single-pass pooling", PoolingSinglePass},
      {6, "tagging overlap contract", TaggingOverlap},
      {7, "synthetic learnability", Learnability},
      {8, "distillation efficacy", DistillationEfficacy},
      {9, "calibration direction", CalibrationDirection},
      {10, "speedup table", SpeedupTable},
      {11, "stratification sanity", StratificationSanity},
      {12, "determinism and persistence", DeterminismAndPersistence},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
  int failed = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& ex) {
      o = {false, std::string("exception: ") + ex.what()};
    }
    failed += !o.pass;
    std::printf("[%s] %2d %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
