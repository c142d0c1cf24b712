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

#include "salience/metrics/report_io.h"

#include "json.hpp"

namespace salience {

std::string MetricsReportToJson(const MetricsReport& report) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["head_kind"] = report.head_kind;
  j["split"] = report.split;
  j["threshold"] = report.prf.threshold;
  j["precision"] = report.prf.precision;
  j["recall"] = report.prf.recall;
  j["f1"] = report.prf.f1;
  j["ap"] = report.ap_defined ? ordered_json(report.ap.ap) : ordered_json();
  j["ece"] = report.calibration.ece;
  ordered_json bins = ordered_json::array();
  for (const auto& b : report.calibration.bins) {
    bins.push_back({{"lower", b.lower},
                    {"upper", b.upper},
                    {"count", b.count},
                    {"accuracy", b.accuracy},
                    {"confidence", b.confidence}});
  }
  j["bins"] = std::move(bins);
  ordered_json topk = ordered_json::array();
  for (const auto& t : report.topk) {
    topk.push_back({{"k", t.k}, {"p", t.p_at_k}, {"r", t.r_at_k},
                    {"n_docs", t.n_docs},
                    {"short_documents", t.short_documents}});
  }
  j["topk"] = std::move(topk);
  j["n_pos"] = report.prf.n_pos;
  j["n_neg"] = report.prf.n_neg;
  j["flags"] = {{"recall_undefined", report.prf.recall_undefined},
                {"ap_tie_across_classes", report.ap.tie_across_classes}};
  return j.dump(2) + "\n";
}

}  // namespace salience
