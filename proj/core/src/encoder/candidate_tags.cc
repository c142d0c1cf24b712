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

#include "salience/encoder/candidate_tags.h"

#include <algorithm>
#include <numeric>
#include <string>

#include "salience/errors.h"

namespace salience {
namespace {

std::string Range(const MentionSpan& s) {
  return "(" + std::to_string(s.token_start) + "," +
         std::to_string(s.token_end) + ")";
}

}  // namespace

TaggedSequence InsertCandidateTags(std::span<const TokenId> tokens,
                                   std::span<const MentionSpan> spans,
                                   size_t max_len) {
  const int64_t n = static_cast<int64_t>(tokens.size());
  std::vector<size_t> order(spans.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return spans[a].token_start < spans[b].token_start ||
           (spans[a].token_start == spans[b].token_start &&
            spans[a].token_end < spans[b].token_end);
  });
  for (size_t i = 0; i < order.size(); ++i) {
    const MentionSpan& s = spans[order[i]];
    if (s.token_start < 0 || s.token_start >= s.token_end ||
        s.token_end > n) {
      throw DomainError("candidate span " + Range(s) + " outside sequence of " +
                        std::to_string(n) + " tokens");
    }
    if (i > 0 && Overlaps(spans[order[i - 1]], s)) {
      throw OverlapError("candidate spans " + Range(spans[order[i - 1]]) +
                         " and " + Range(s) + " overlap");
    }
  }
  const size_t tagged_len = tokens.size() + 2 * spans.size();
  if (max_len > 0 && tagged_len > max_len) {
    throw OverflowError("tagged sequence of " + std::to_string(tagged_len) +
                        " tokens exceeds max_len " + std::to_string(max_len));
  }

  TaggedSequence out;
  out.tokens.reserve(tagged_len);
  out.close_indices.resize(spans.size());
  out.inner_spans.resize(spans.size());
  int64_t next = 0;
  for (size_t idx : order) {
    const MentionSpan& s = spans[idx];
    out.tokens.insert(out.tokens.end(), tokens.begin() + next,
                      tokens.begin() + s.token_start);
    out.tokens.push_back(kCandOpenId);
    const size_t inner_begin = out.tokens.size();
    out.tokens.insert(out.tokens.end(), tokens.begin() + s.token_start,
                      tokens.begin() + s.token_end);
    out.inner_spans[idx] = {inner_begin, out.tokens.size()};
    out.close_indices[idx] = out.tokens.size();
    out.tokens.push_back(kCandCloseId);
    next = s.token_end;
  }
  out.tokens.insert(out.tokens.end(), tokens.begin() + next, tokens.end());
  return out;
}

std::vector<TokenId> StripCandidateTags(std::span<const TokenId> tokens) {
  std::vector<TokenId> out;
  out.reserve(tokens.size());
  for (TokenId id : tokens) {
    if (id != kCandOpenId && id != kCandCloseId) out.push_back(id);
  }
  return out;
}

}  // namespace salience
