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

#ifndef SALIENCE_METRICS_REPORT_IO_H_
#define SALIENCE_METRICS_REPORT_IO_H_

#include <string>

#include "salience/metrics/metrics.h"

namespace salience {

// Pretty-printed JSON with a trailing newline.
std::string MetricsReportToJson(const MetricsReport& report);

}  // namespace salience

#endif  // SALIENCE_METRICS_REPORT_IO_H_
