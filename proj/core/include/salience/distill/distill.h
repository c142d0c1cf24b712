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

#ifndef SALIENCE_DISTILL_DISTILL_H_
#define SALIENCE_DISTILL_DISTILL_H_

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "salience/corpus/types.h"
#include "salience/distill/ensemble.h"
#include "salience/heads/trainer.h"

namespace salience {

struct SoftLabel {
  std::string doc_id;
  int64_t token_start = 0;
  int64_t token_end = 0;
  double teacher_score = 0.0;
  bool operator==(const SoftLabel&) const = default;
};

class SoftLabelSet {
 public:
  using Key = std::tuple<std::string, int64_t, int64_t>;

  void Add(SoftLabel label);
  std::optional<double> Find(const std::string& doc_id, int64_t start,
                             int64_t end) const;
  // Sorted by (doc_id, start, end).
  std::vector<SoftLabel> Labels() const;
  size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }
  bool operator==(const SoftLabelSet&) const = default;

 private:
  std::map<Key, double> labels_;
};

void WriteSoftLabels(const SoftLabelSet& set, std::ostream& out);
SoftLabelSet ReadSoftLabels(std::istream& in,
                            const std::string& source = "<stream>");
void SaveSoftLabels(const SoftLabelSet& set, const std::string& path);
SoftLabelSet LoadSoftLabels(const std::string& path);

// Mean member scores over train-mode candidates of `docs`, then the
// teacher temperature.
SoftLabelSet EnsemblePredict(const TeacherEnsemble& ensemble,
                             const std::vector<const Document*>& docs,
                             double t_teacher = 1.0);

// Soft labels for the training split only; gold labels are never copied.
SoftLabelSet BuildTransferSet(const Corpus& corpus,
                              const TeacherEnsemble& ensemble,
                              double t_teacher);

// -sum[y log s + (1-y) log(1-s)] with s = sigmoid(z / T_student).
Var DistillLoss(const Var& student_logits, std::span<const double> teacher,
                double t_student);

struct DistillConfig {
  double t_teacher = 1.0;
  double t_student = 1.0;
  size_t epochs = 20;
  size_t batch_size = 8;
  double learning_rate = 3e-4;
  double weight_decay = 0.01;
  uint64_t seed = 1;
  HeadKind student_head = HeadKind::kPooling;
  Aggregation validation_aggregation = Aggregation::kFirst;

  void Validate() const;
};

TrainResult DistillTrain(const EncoderConfig& student_encoder,
                         const SoftLabelSet& transfer, const Corpus& corpus,
                         const DistillConfig& config,
                         const std::optional<Vocab>& vocab = std::nullopt,
                         const EpochCallback& on_epoch = {});

}  // namespace salience

#endif  // SALIENCE_DISTILL_DISTILL_H_
