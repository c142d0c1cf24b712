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

#include "salience/analysis/analysis_io.h"

#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace salience {
namespace {

using nlohmann::ordered_json;

ordered_json StrataJson(const std::vector<StratumReport>& strata) {
  ordered_json arr = ordered_json::array();
  for (const auto& s : strata) {
    arr.push_back({{"bucket", s.bucket},
                   {"n", s.n},
                   {"n_pos", s.n_pos},
                   {"positive_rate", s.positive_rate},
                   {"ap", s.ap ? ordered_json(*s.ap) : ordered_json()},
                   {"flagged", s.flagged}});
  }
  return arr;
}

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string AnalysisToJson(const AnalysisReport& report) {
  ordered_json j;
  j["strata"] = {{"position", StrataJson(report.position)},
                 {"frequency", StrataJson(report.frequency)},
                 {"seen_unseen", StrataJson(report.seen_unseen)}};
  ordered_json sweep = ordered_json::array();
  for (const auto& p : report.sweep) {
    sweep.push_back({{"t_teacher", p.t_teacher},
                     {"t_student", p.t_student},
                     {"ece", p.ece},
                     {"ap", p.ap}});
  }
  j["sweep"] = std::move(sweep);
  ordered_json transfer = ordered_json::array();
  for (const auto& t : report.transfer) {
    transfer.push_back(
        {{"source", t.source},
         {"target", t.target},
         {"ap", t.metrics.ap_defined ? ordered_json(t.metrics.ap.ap)
                                     : ordered_json()},
         {"f1", t.metrics.prf.f1},
         {"ece", t.metrics.calibration.ece}});
  }
  j["transfer"] = std::move(transfer);
  return j.dump(2) + "\n";
}

std::string StrataToCsv(const AnalysisReport& report) {
  std::ostringstream out;
  out << "stratifier,bucket,n,n_pos,positive_rate,ap\n";
  auto rows = [&](const char* name, const std::vector<StratumReport>& strata) {
    for (const auto& s : strata) {
      out << name << ',' << s.bucket << ',' << s.n << ',' << s.n_pos << ','
          << Num(s.positive_rate) << ',' << (s.ap ? Num(*s.ap) : "") << '\n';
    }
  };
  rows("position", report.position);
  rows("frequency", report.frequency);
  rows("seen_unseen", report.seen_unseen);
  return out.str();
}

std::string SweepToCsv(const std::vector<SweepPoint>& sweep) {
  std::ostringstream out;
  out << "t_teacher,t_student,ece,ap\n";
  for (const auto& p : sweep) {
    out << Num(p.t_teacher) << ',' << Num(p.t_student) << ',' << Num(p.ece)
        << ',' << Num(p.ap) << '\n';
  }
  return out.str();
}

}  // namespace salience
