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

#include "salience/corpus/coverage.h"

#include <limits>
#include <map>
#include <string>

#include "salience/corpus/labels.h"
#include "salience/errors.h"

namespace salience {

WindowCoverage CoverageWithinWindow(const Corpus& corpus, size_t window) {
  WindowCoverage cov;
  size_t inside_salient = 0;
  size_t inside_other = 0;
  for (const auto& doc : corpus.documents) {
    // First mention per entity: earliest start, ties to the shorter span.
    std::map<std::string, const MentionSpan*> first;
    for (const auto& m : doc.mentions) {
      auto [it, inserted] = first.emplace(m.entity_id, &m);
      if (!inserted && (m.token_start < it->second->token_start ||
                        (m.token_start == it->second->token_start &&
                         m.token_end < it->second->token_end))) {
        it->second = &m;
      }
    }
    for (const auto& [id, m] : first) {
      const EntityAnnotation* e = doc.FindEntity(id);
      const bool salient = e != nullptr && IsSalient(*e);
      const bool inside = m->token_end <= static_cast<int64_t>(window);
      if (salient) {
        ++cov.n_salient;
        inside_salient += inside;
      } else {
        ++cov.n_non_salient;
        inside_other += inside;
      }
    }
  }
  if (cov.n_salient + cov.n_non_salient == 0) {
    throw DataError("coverage: no mentions in corpus");
  }
  cov.salient = cov.n_salient == 0 ? 1.0
                                   : static_cast<double>(inside_salient) /
                                         static_cast<double>(cov.n_salient);
  cov.non_salient = cov.n_non_salient == 0
                        ? 1.0
                        : static_cast<double>(inside_other) /
                              static_cast<double>(cov.n_non_salient);
  return cov;
}

}  // namespace salience
