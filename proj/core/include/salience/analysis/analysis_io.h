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

#ifndef SALIENCE_ANALYSIS_ANALYSIS_IO_H_
#define SALIENCE_ANALYSIS_ANALYSIS_IO_H_

#include <string>
#include <vector>

#include "salience/analysis/strata.h"
#include "salience/analysis/sweep.h"
#include "salience/analysis/transfer.h"

namespace salience {

struct AnalysisReport {
  std::vector<StratumReport> position;
  std::vector<StratumReport> frequency;
  std::vector<StratumReport> seen_unseen;
  std::vector<SweepPoint> sweep;
  std::vector<TransferReport> transfer;
};

std::string AnalysisToJson(const AnalysisReport& report);
// Columns: stratifier,bucket,n,n_pos,positive_rate,ap
std::string StrataToCsv(const AnalysisReport& report);
// Columns: t_teacher,t_student,ece,ap
std::string SweepToCsv(const std::vector<SweepPoint>& sweep);

}  // namespace salience

#endif  // SALIENCE_ANALYSIS_ANALYSIS_IO_H_
