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

#ifndef SALIENCE_HEADS_SELECTION_H_
#define SALIENCE_HEADS_SELECTION_H_

#include <span>
#include <string_view>
#include <vector>

#include "salience/corpus/types.h"

namespace salience {

enum class SelectionPolicy { kLongestFirst, kFirstOccurrence };

std::string_view ToString(SelectionPolicy policy);

// Greedy pairwise-disjoint subset. Returns indices sorted by position.
std::vector<size_t> SelectNonOverlapping(std::span<const MentionSpan> spans,
                                         SelectionPolicy policy);

// Repeated selection until every span is in exactly one pass.
std::vector<std::vector<size_t>> PartitionNonOverlapping(
    std::span<const MentionSpan> spans,
    SelectionPolicy policy = SelectionPolicy::kLongestFirst);

}  // namespace salience

#endif  // SALIENCE_HEADS_SELECTION_H_
