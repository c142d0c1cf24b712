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

#include "salience_lab/commands.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include "json.hpp"
#include "salience/analysis/analysis_io.h"
#include "salience/analysis/strata.h"
#include "salience/analysis/sweep.h"
#include "salience/analysis/transfer.h"
#include "salience/corpus/corpus_io.h"
#include "salience/corpus/split.h"
#include "salience/distill/distill.h"
#include "salience/distill/ensemble.h"
#include "salience/errors.h"
#include "salience/heads/predict.h"
#include "salience/heads/predictions_io.h"
#include "salience/heads/scoring.h"
#include "salience/heads/trainer.h"
#include "salience/io.h"
#include "salience/metrics/report_io.h"
#include "salience_lab/manifest.h"

namespace salience::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

std::string Join(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

std::string OutDir(const RunConfig& config) {
  const std::string out = config.Path("out");
  if (out.empty()) throw ConfigError("paths.out must not be empty");
  return out;
}

void RequireExists(const std::string& path, const std::string& what) {
  if (!fs::exists(path)) throw ConfigError(what + " '" + path + "' does not exist");
}

std::string CorpusPath(const RunConfig& config) {
  std::string path = config.Path("corpus");
  if (path.empty()) path = Join(OutDir(config), "corpus.jsonl");
  RequireExists(path, "corpus");
  return path;
}

Corpus ReadConfiguredCorpus(const RunConfig& config, Manifest& manifest) {
  const std::string path = CorpusPath(config);
  manifest.AddInput(path);
  return LoadCorpus(path, config.Tokenizer());
}

std::string ModelPath(const RunConfig& config, const std::string& head) {
  std::string path = config.Path("model");
  if (path.empty()) path = Join(Join(OutDir(config), "models"), head);
  RequireExists(path, "model directory");
  return path;
}

std::string ModelName(const std::string& model_dir) {
  std::string name = fs::path(model_dir).lexically_normal().filename().string();
  if (name.empty()) name = fs::path(model_dir).lexically_normal().parent_path().filename().string();
  return name.empty() ? "model" : name;
}

std::string PredictionsPath(const RunConfig& config) {
  std::string path = config.Path("predictions");
  if (path.empty()) {
    path = Join(OutDir(config),
                "predictions_" + config.Get("train.head").get<std::string>() + ".jsonl");
  }
  RequireExists(path, "predictions file");
  return path;
}

void WriteJson(const std::string& path, const ordered_json& j, Manifest& manifest) {
  WriteFileAtomic(path, j.dump(2) + "\n");
  manifest.AddOutput(path);
}

void WriteText(const std::string& path, const std::string& text, Manifest& manifest) {
  WriteFileAtomic(path, text);
  manifest.AddOutput(path);
}

ordered_json HistoryJson(const TrainResult& r) {
  ordered_json epochs = ordered_json::array();
  for (const auto& e : r.history) {
    ordered_json row;
    row["epoch"] = e.epoch;
    row["mean_loss"] = e.mean_loss;
    row["n_candidates"] = e.n_candidates;
    row["valid_ap"] = e.valid_ap ? ordered_json(*e.valid_ap) : ordered_json();
    epochs.push_back(std::move(row));
  }
  ordered_json j;
  j["best_epoch"] = r.best_epoch;
  j["epochs"] = std::move(epochs);
  return j;
}

std::vector<const Document*> DocumentsFor(const Corpus& corpus, const std::string& split) {
  if (split == "all") {
    std::vector<const Document*> docs;
    for (const auto& d : corpus.documents) docs.push_back(&d);
    return docs;
  }
  return corpus.DocumentsIn(ParseSplit(split));
}

Split ConfiguredSplit(const RunConfig& config, const std::string& key) {
  const std::string name = config.Get(key).get<std::string>();
  try {
    return ParseSplit(name);
  } catch (const Error&) {
    throw ConfigError(key + " must be train, valid or test, got '" + name + "'");
  }
}

std::vector<std::string> TeacherDirs(const RunConfig& config) {
  std::vector<std::string> dirs;
  for (const auto& d : config.Get("paths.teachers")) dirs.push_back(d.get<std::string>());
  if (dirs.empty()) {
    const auto root = fs::path(OutDir(config)) / "teachers";
    if (fs::is_directory(root)) {
      for (const auto& e : fs::directory_iterator(root)) {
        if (e.is_directory()) dirs.push_back(e.path().string());
      }
      std::sort(dirs.begin(), dirs.end());
    }
  }
  return dirs;
}

TeacherEnsemble LoadTeachers(const std::vector<std::string>& dirs, Manifest& manifest) {
  TeacherEnsemble e;
  for (const auto& dir : dirs) {
    RequireExists(dir, "teacher directory");
    manifest.AddInput(dir);
    e.members.push_back(SalienceModel::Load(dir));
  }
  return e;
}

std::vector<MemberRecipe> Recipe(const RunConfig& config) {
  const std::string kind = config.Get("distill.ensemble").get<std::string>();
  if (kind == "default") return DefaultEnsembleRecipe();
  if (kind == "seeds") {
    const size_t n = config.Get("distill.members").get<size_t>();
    if (n == 0) throw ConfigError("distill.members must be >= 1");
    return SeedVariedRecipe(n);
  }
  throw ConfigError("distill.ensemble must be 'default' or 'seeds', got '" + kind + "'");
}

ordered_json CalibrationJson(const CalibrationBins& c, double temperature) {
  ordered_json bins = ordered_json::array();
  for (const auto& b : c.bins) {
    bins.push_back({{"lower", b.lower}, {"upper", b.upper}, {"count", b.count},
                    {"accuracy", b.accuracy}, {"confidence", b.confidence}});
  }
  ordered_json j;
  j["temperature"] = temperature;
  j["bins_m"] = c.m;
  j["n"] = c.n;
  j["ece"] = c.ece;
  j["bins"] = std::move(bins);
  return j;
}

std::string CalibrationCsv(const CalibrationBins& c) {
  std::ostringstream out;
  out.precision(17);
  out << "lower,upper,count,accuracy,confidence\n";
  for (const auto& b : c.bins) {
    out << b.lower << ',' << b.upper << ',' << b.count << ',' << b.accuracy << ','
        << b.confidence << '\n';
  }
  return out.str();
}

}  // namespace

void SynthGen(const RunConfig& config) {
  Manifest manifest("synth-gen", config.document());
  const std::string out = OutDir(config);
  manifest.BeginStage("generate");
  const Corpus corpus =
      SplitCorpus(SynthGenerate(config.Synthetic()), config.SplitRatios(), config.Seed());
  manifest.BeginStage("write");
  const std::string path = Join(out, "corpus.jsonl");
  SaveCorpus(corpus, path);
  manifest.AddOutput(path);
  manifest.Write(out);
}

void TrainModel(const RunConfig& config) {
  Manifest manifest("train", config.document());
  const std::string out = OutDir(config);
  manifest.BeginStage("load");
  const Corpus corpus = ReadConfiguredCorpus(config, manifest);
  const TrainConfig tc = config.Train();
  manifest.BeginStage("train");
  const TrainResult r = Train(corpus, config.Encoder(), tc);
  manifest.BeginStage("write");
  const std::string head(ToString(tc.head_kind));
  const std::string model_dir = Join(Join(out, "models"), head);
  r.model.Save(model_dir);
  manifest.AddOutput(model_dir);
  WriteJson(Join(out, "train_" + head + ".json"), HistoryJson(r), manifest);
  manifest.Write(out);
}

void DistillStudent(const RunConfig& config) {
  Manifest manifest("distill", config.document());
  const std::string out = OutDir(config);
  manifest.BeginStage("load");
  const Corpus corpus = ReadConfiguredCorpus(config, manifest);
  const DistillConfig dc = config.Distill();
  std::vector<std::string> teacher_dirs;
  for (const auto& d : config.Get("paths.teachers")) teacher_dirs.push_back(d.get<std::string>());
  TeacherEnsemble ensemble;
  ordered_json teachers = ordered_json::array();
  if (!teacher_dirs.empty()) {
    ensemble = LoadTeachers(teacher_dirs, manifest);
    for (const auto& d : teacher_dirs) teachers.push_back({{"path", d}});
  } else {
    manifest.BeginStage("teachers");
    const auto recipe = Recipe(config);
    ensemble = TrainEnsemble(corpus, config.Encoder(), config.Train(), recipe,
                             [&](const MemberRecipe& m, const TrainResult& r) {
                               teachers.push_back({{"name", m.name},
                                                   {"head", std::string(ToString(m.head))},
                                                   {"history", HistoryJson(r)}});
                             });
    for (size_t i = 0; i < recipe.size(); ++i) {
      const std::string dir = Join(Join(out, "teachers"), recipe[i].name);
      ensemble.members[i].Save(dir);
      manifest.AddOutput(dir);
    }
  }
  manifest.BeginStage("transfer_set");
  const SoftLabelSet transfer = BuildTransferSet(corpus, ensemble, dc.t_teacher);
  const std::string labels_path = Join(out, "soft_labels.jsonl");
  SaveSoftLabels(transfer, labels_path);
  manifest.AddOutput(labels_path);
  manifest.BeginStage("student");
  const TrainResult r = DistillTrain(config.Encoder(), transfer, corpus, dc,
                                     ensemble.members.front().vocab);
  manifest.BeginStage("write");
  const std::string student_dir = Join(Join(out, "models"), "student");
  r.model.Save(student_dir);
  manifest.AddOutput(student_dir);
  ordered_json report;
  report["t_teacher"] = dc.t_teacher;
  report["t_student"] = dc.t_student;
  report["transfer_labels"] = transfer.size();
  report["teachers"] = std::move(teachers);
  report["student"] = HistoryJson(r);
  WriteJson(Join(out, "distill.json"), report, manifest);
  manifest.Write(out);
}

void Evaluate(const RunConfig& config) {
  Manifest manifest("evaluate", config.document());
  const std::string out = OutDir(config);
  manifest.BeginStage("load");
  const MetricsOptions options = config.Metrics();
  const Split split = ConfiguredSplit(config, "metrics.split");
  const Corpus corpus = ReadConfiguredCorpus(config, manifest);
  const std::string model_dir =
      ModelPath(config, config.Get("train.head").get<std::string>());
  manifest.AddInput(model_dir);
  const SalienceModel model = SalienceModel::Load(model_dir);
  manifest.BeginStage("predict");
  const PredictionSet predictions =
      PredictCorpus(model, corpus, split, config.AggregationMode());
  manifest.BeginStage("metrics");
  MetricsReport report = ComputeMetrics(predictions.records, options);
  report.head_kind = std::string(ToString(model.head));
  report.split = std::string(ToString(split));
  manifest.BeginStage("write");
  const std::string name = ModelName(model_dir);
  const std::string pred_path = Join(out, "predictions_" + name + ".jsonl");
  SavePredictions(predictions, pred_path);
  manifest.AddOutput(pred_path);
  WriteText(Join(out, "metrics_" + name + ".json"), MetricsReportToJson(report), manifest);
  manifest.Write(out);
}

void Calibrate(const RunConfig& config) {
  Manifest manifest("calibrate", config.document());
  const std::string out = OutDir(config);
  const double temperature = config.Get("calibrate.temperature").get<double>();
  if (!(temperature > 0.0)) throw ConfigError("calibrate.temperature must be > 0");
  const size_t bins = config.Metrics().bins;
  manifest.BeginStage("load");
  const std::string path = PredictionsPath(config);
  manifest.AddInput(path);
  std::vector<PredictionRecord> records = LoadPredictions(path).records;
  manifest.BeginStage("calibrate");
  if (temperature != 1.0) {
    for (auto& r : records) r.aggregated_score = TemperatureScore(r.aggregated_logit, temperature);
  }
  const CalibrationBins c = Ece(records, bins);
  manifest.BeginStage("write");
  WriteJson(Join(out, "calibration.json"), CalibrationJson(c, temperature), manifest);
  WriteText(Join(out, "calibration.csv"), CalibrationCsv(c), manifest);
  manifest.Write(out);
}

void Analyze(const RunConfig& config) {
  Manifest manifest("analyze", config.document());
  const std::string out = OutDir(config);
  const auto pairs = config.SweepPairs();
  const MetricsOptions options = config.Metrics();
  manifest.BeginStage("load");
  const Corpus corpus = ReadConfiguredCorpus(config, manifest);
  const std::string pred_path = PredictionsPath(config);
  manifest.AddInput(pred_path);
  const auto records = LoadPredictions(pred_path).records;
  manifest.BeginStage("strata");
  AnalysisReport report;
  report.position = StratifyByPosition(records, corpus);
  report.frequency = StratifyByFrequency(records, corpus);
  const auto [seen, unseen] = SeenUnseen(records, corpus, corpus);
  report.seen_unseen = {seen, unseen};
  const auto& targets = config.Get("paths.transfer");
  if (!targets.empty()) {
    manifest.BeginStage("transfer");
    const std::string model_dir =
        ModelPath(config, config.Get("train.head").get<std::string>());
    manifest.AddInput(model_dir);
    const SalienceModel model = SalienceModel::Load(model_dir);
    const std::string source = fs::path(CorpusPath(config)).stem().string();
    for (const auto& t : targets) {
      const std::string path = t.get<std::string>();
      RequireExists(path, "transfer corpus");
      manifest.AddInput(path);
      const Corpus target = LoadCorpus(path, config.Tokenizer());
      report.transfer.push_back(TransferEval(model, source, fs::path(path).stem().string(),
                                             target, Split::kTest, options,
                                             config.AggregationMode()));
    }
  }
  if (!pairs.empty()) {
    manifest.BeginStage("sweep");
    const auto dirs = TeacherDirs(config);
    if (dirs.empty()) {
      throw ConfigError("analysis.sweep needs teachers: run distill first or set paths.teachers");
    }
    const TeacherEnsemble ensemble = LoadTeachers(dirs, manifest);
    report.sweep = TemperatureSweep(ensemble, config.Encoder(), config.Distill(), pairs,
                                    corpus, options.bins);
  }
  manifest.BeginStage("write");
  WriteText(Join(out, "analysis.json"), AnalysisToJson(report), manifest);
  WriteText(Join(out, "strata.csv"), StrataToCsv(report), manifest);
  if (!report.sweep.empty()) {
    WriteText(Join(out, "sweep.csv"), SweepToCsv(report.sweep), manifest);
  }
  manifest.Write(out);
}

void Score(const RunConfig& config) {
  Manifest manifest("score", config.document());
  const std::string out = OutDir(config);
  const std::string split = config.Get("score.split").get<std::string>();
  if (split != "all") ConfiguredSplit(config, "score.split");
  manifest.BeginStage("load");
  const Corpus corpus = ReadConfiguredCorpus(config, manifest);
  const std::string model_dir =
      ModelPath(config, config.Get("train.head").get<std::string>());
  manifest.AddInput(model_dir);
  const SalienceModel model = SalienceModel::Load(model_dir);
  manifest.BeginStage("score");
  const PredictionSet predictions =
      PredictDocuments(model, DocumentsFor(corpus, split), config.AggregationMode());
  manifest.BeginStage("write");
  const std::string path = Join(out, "scores_" + ModelName(model_dir) + ".jsonl");
  SavePredictions(predictions, path);
  manifest.AddOutput(path);
  manifest.Write(out);
}

void Speedup(const RunConfig& config) {
  Manifest manifest("speedup", config.document());
  const double s = SpeedupEstimate(config.Get("speedup.salient").get<double>(),
                                   config.Get("speedup.nonsalient").get<double>());
  std::printf("%.1f\n", s);
  std::fflush(stdout);
  manifest.Write(OutDir(config));
}

}  // namespace salience::cli
