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

#include "salience/analysis/sweep.h"

#include <map>
#include <set>

#include "salience/errors.h"
#include "salience/heads/predict.h"
#include "salience/metrics/metrics.h"

namespace salience {

std::vector<SweepPoint> TemperatureSweep(
    const TeacherEnsemble& ensemble, const EncoderConfig& student,
    const DistillConfig& base,
    const std::vector<std::pair<double, double>>& pairs, const Corpus& corpus,
    size_t bins, const SweepCallback& on_point) {
  std::set<std::pair<double, double>> unique(pairs.begin(), pairs.end());
  if (unique.size() != pairs.size()) {
    throw ConfigError("temperature pairs must be unique");
  }
  const Vocab vocab = Vocab::Build(corpus);
  std::map<double, SoftLabelSet> transfer;
  std::vector<SweepPoint> out;
  for (const auto& [tt, ts] : pairs) {
    auto it = transfer.find(tt);
    if (it == transfer.end()) {
      it = transfer.emplace(tt, BuildTransferSet(corpus, ensemble, tt)).first;
    }
    DistillConfig cfg = base;
    cfg.t_teacher = tt;
    cfg.t_student = ts;
    const TrainResult trained =
        DistillTrain(student, it->second, corpus, cfg, vocab);
    const PredictionSet set = PredictCorpus(trained.model, corpus, Split::kTest,
                                            cfg.validation_aggregation);
    SweepPoint p;
    p.t_teacher = tt;
    p.t_student = ts;
    p.ece = Ece(set.records, bins).ece;
    p.ap = AveragePrecision(set.records).ap;
    if (on_point) on_point(p);
    out.push_back(p);
  }
  return out;
}

}  // namespace salience
