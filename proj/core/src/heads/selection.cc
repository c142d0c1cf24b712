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

#include "salience/heads/selection.h"

#include <algorithm>
#include <numeric>

namespace salience {
namespace {

std::vector<size_t> Select(std::span<const MentionSpan> spans,
                           const std::vector<size_t>& pool,
                           SelectionPolicy policy) {
  std::vector<size_t> order = pool;
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    const MentionSpan& x = spans[a];
    const MentionSpan& y = spans[b];
    if (policy == SelectionPolicy::kLongestFirst && x.length() != y.length()) {
      return x.length() > y.length();
    }
    if (x.token_start != y.token_start) return x.token_start < y.token_start;
    return x.token_end > y.token_end;
  });
  std::vector<size_t> kept;
  for (size_t i : order) {
    const bool clash = std::any_of(kept.begin(), kept.end(), [&](size_t k) {
      return Overlaps(spans[i], spans[k]);
    });
    if (!clash) kept.push_back(i);
  }
  std::sort(kept.begin(), kept.end(), [&](size_t a, size_t b) {
    return spans[a].token_start < spans[b].token_start;
  });
  return kept;
}

}  // namespace

std::string_view ToString(SelectionPolicy policy) {
  return policy == SelectionPolicy::kLongestFirst ? "longest_first"
                                                  : "first_occurrence";
}

std::vector<size_t> SelectNonOverlapping(std::span<const MentionSpan> spans,
                                         SelectionPolicy policy) {
  std::vector<size_t> all(spans.size());
  std::iota(all.begin(), all.end(), 0);
  return Select(spans, all, policy);
}

std::vector<std::vector<size_t>> PartitionNonOverlapping(
    std::span<const MentionSpan> spans, SelectionPolicy policy) {
  std::vector<size_t> remaining(spans.size());
  std::iota(remaining.begin(), remaining.end(), 0);
  std::vector<std::vector<size_t>> passes;
  while (!remaining.empty()) {
    auto pass = Select(spans, remaining, policy);
    std::vector<size_t> rest;
    for (size_t i : remaining) {
      if (std::find(pass.begin(), pass.end(), i) == pass.end()) rest.push_back(i);
    }
    passes.push_back(std::move(pass));
    remaining = std::move(rest);
  }
  return passes;
}

}  // namespace salience
