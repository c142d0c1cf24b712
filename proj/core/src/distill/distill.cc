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

#include "salience/distill/distill.h"

#include <cmath>
#include <sstream>

#include "json.hpp"
#include "salience/corpus/candidates.h"
#include "salience/errors.h"
#include "salience/heads/scoring.h"
#include "salience/io.h"
#include "salience/parallel.h"
#include "salience/tensor/ops.h"

namespace salience {

void SoftLabelSet::Add(SoftLabel label) {
  if (!(label.teacher_score >= 0.0 && label.teacher_score <= 1.0)) {
    throw DomainError("teacher score outside [0,1]");
  }
  labels_[{label.doc_id, label.token_start, label.token_end}] =
      label.teacher_score;
}

std::optional<double> SoftLabelSet::Find(const std::string& doc_id,
                                         int64_t start, int64_t end) const {
  auto it = labels_.find({doc_id, start, end});
  if (it == labels_.end()) return std::nullopt;
  return it->second;
}

std::vector<SoftLabel> SoftLabelSet::Labels() const {
  std::vector<SoftLabel> out;
  out.reserve(labels_.size());
  for (const auto& [k, v] : labels_) {
    out.push_back({std::get<0>(k), std::get<1>(k), std::get<2>(k), v});
  }
  return out;
}

void WriteSoftLabels(const SoftLabelSet& set, std::ostream& out) {
  for (const auto& l : set.Labels()) {
    nlohmann::ordered_json j;
    j["doc_id"] = l.doc_id;
    j["token_start"] = l.token_start;
    j["token_end"] = l.token_end;
    j["teacher_score"] = l.teacher_score;
    out << j.dump() << '\n';
  }
}

SoftLabelSet ReadSoftLabels(std::istream& in, const std::string& source) {
  SoftLabelSet set;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const char* field = "<record>";
    try {
      const auto j = nlohmann::json::parse(line);
      SoftLabel l;
      field = "doc_id";
      l.doc_id = j.at(field).get<std::string>();
      field = "token_start";
      l.token_start = j.at(field).get<int64_t>();
      field = "token_end";
      l.token_end = j.at(field).get<int64_t>();
      field = "teacher_score";
      l.teacher_score = j.at(field).get<double>();
      if (!(l.teacher_score >= 0.0 && l.teacher_score <= 1.0)) {
        throw FormatError(source, line_no, field, "must lie in [0,1]");
      }
      set.Add(std::move(l));
    } catch (const nlohmann::json::exception& ex) {
      throw FormatError(source, line_no, field, ex.what());
    }
  }
  return set;
}

void SaveSoftLabels(const SoftLabelSet& set, const std::string& path) {
  std::ostringstream out;
  WriteSoftLabels(set, out);
  WriteFileAtomic(path, out.str());
}

SoftLabelSet LoadSoftLabels(const std::string& path) {
  std::istringstream in(ReadFile(path));
  return ReadSoftLabels(in, path);
}

SoftLabelSet EnsemblePredict(const TeacherEnsemble& ensemble,
                             const std::vector<const Document*>& docs,
                             double t_teacher) {
  if (ensemble.members.empty()) throw ConfigError("empty teacher ensemble");
  if (!(t_teacher > 0.0)) throw ConfigError("t_teacher must be > 0");
  std::vector<std::vector<SoftLabel>> per_doc(docs.size());
  ParallelFor(docs.size(), [&](size_t d) {
    const Document& doc = *docs[d];
    std::vector<MentionSpan> spans;
    for (const auto& c : GenerateCandidates(doc, CandidateMode::kTrain)) {
      spans.push_back(c.span);
    }
    const auto mean = EnsembleMeanScores(ensemble, doc, spans);
    for (size_t i = 0; i < spans.size(); ++i) {
      if (!mean[i]) continue;
      per_doc[d].push_back({doc.doc_id, spans[i].token_start,
                            spans[i].token_end,
                            ApplyTeacherTemperature(*mean[i], t_teacher)});
    }
  });
  SoftLabelSet set;
  for (auto& labels : per_doc) {
    for (auto& l : labels) set.Add(std::move(l));
  }
  return set;
}

SoftLabelSet BuildTransferSet(const Corpus& corpus,
                              const TeacherEnsemble& ensemble,
                              double t_teacher) {
  return EnsemblePredict(ensemble, corpus.DocumentsIn(Split::kTrain),
                         t_teacher);
}

Var DistillLoss(const Var& student_logits, std::span<const double> teacher,
                double t_student) {
  if (!(t_student > 0.0)) throw ConfigError("t_student must be > 0");
  Var z = student_logits;
  if (t_student != 1.0) z = ops::Scale(z, 1.0 / t_student);
  return ops::BinaryCrossEntropy(ops::Sigmoid(z), teacher);
}

void DistillConfig::Validate() const {
  if (!(t_teacher > 0.0)) throw ConfigError("t_teacher must be > 0");
  if (!(t_student > 0.0)) throw ConfigError("t_student must be > 0");
  if (epochs == 0) throw ConfigError("epochs must be >= 1");
  if (batch_size == 0) throw ConfigError("batch_size must be >= 1");
  if (!(learning_rate > 0.0)) throw ConfigError("learning_rate must be > 0");
}

TrainResult DistillTrain(const EncoderConfig& student_encoder,
                         const SoftLabelSet& transfer, const Corpus& corpus,
                         const DistillConfig& config,
                         const std::optional<Vocab>& vocab,
                         const EpochCallback& on_epoch) {
  config.Validate();
  if (transfer.empty()) throw DataError("empty transfer set");
  std::vector<TrainingExample> examples;
  for (const Document* doc : corpus.DocumentsIn(Split::kTrain)) {
    TrainingExample ex;
    ex.doc = doc;
    for (const auto& c : GenerateCandidates(*doc, CandidateMode::kTrain)) {
      const auto t = transfer.Find(doc->doc_id, c.span.token_start,
                                   c.span.token_end);
      if (!t) continue;
      ex.spans.push_back(c.span);
      ex.targets.push_back(*t);
    }
    if (!ex.spans.empty()) examples.push_back(std::move(ex));
  }
  if (examples.empty()) {
    throw DataError("transfer set matches no training-split candidate");
  }
  SalienceModel student =
      SalienceModel::Create(vocab ? *vocab : Vocab::Build(corpus),
                            student_encoder, config.student_head, config.seed);
  LoopConfig loop;
  loop.epochs = config.epochs;
  loop.batch_size = config.batch_size;
  loop.learning_rate = config.learning_rate;
  loop.weight_decay = config.weight_decay;
  loop.seed = config.seed;
  loop.temperature = config.t_student;
  loop.validation_aggregation = config.validation_aggregation;
  return RunTrainingLoop(std::move(student), examples,
                         corpus.DocumentsIn(Split::kValid), loop, on_epoch);
}

}  // namespace salience
