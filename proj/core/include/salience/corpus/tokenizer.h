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

#ifndef SALIENCE_CORPUS_TOKENIZER_H_
#define SALIENCE_CORPUS_TOKENIZER_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "salience/corpus/types.h"

namespace salience {

using TokenId = int32_t;

// Reserved ids. Text tokenization never produces them: punctuation is either
// dropped or emitted as a standalone token, so "[sep]" etc. cannot form.
inline constexpr TokenId kPadId = 0;
inline constexpr TokenId kUnkId = 1;
inline constexpr TokenId kCandOpenId = 2;
inline constexpr TokenId kCandCloseId = 3;
inline constexpr TokenId kSepId = 4;
inline constexpr TokenId kClsId = 5;
inline constexpr TokenId kNumReservedIds = 6;

inline constexpr std::string_view kSepWord = "[SEP]";

struct TokenizerSpec {
  bool lowercase = true;
  bool drop_punctuation = true;
  size_t max_len = 128;
};

// Splits text on whitespace and ASCII punctuation. Punctuation characters are
// dropped or kept as single-character tokens depending on the spec. Bytes
// >= 0x80 are treated as word characters, so UTF-8 passes through intact.
std::vector<std::string> SplitWords(std::string_view text,
                                    const TokenizerSpec& spec);

// Title words, then kSepWord, then body words. The separator is only emitted
// when both parts are non-empty.
std::vector<std::string> DocumentWords(std::string_view title,
                                       std::string_view body,
                                       const TokenizerSpec& spec);

// Word -> id mapping with reserved ids [0, kNumReservedIds).
class Vocab {
 public:
  Vocab();

  // Ids are assigned to the sorted set of distinct words, so the result only
  // depends on the word multiset, not on document order.
  static Vocab Build(const Corpus& corpus);
  static Vocab FromWords(std::vector<std::string> words);

  TokenId Id(std::string_view word) const;
  const std::string& Word(TokenId id) const;
  size_t size() const { return words_.size(); }
  bool Contains(std::string_view word) const;

  // All words in id order, reserved entries included.
  const std::vector<std::string>& words() const { return words_; }

  static bool IsReserved(TokenId id) { return id >= 0 && id < kNumReservedIds; }

  bool operator==(const Vocab& o) const { return words_ == o.words_; }

 private:
  std::vector<std::string> words_;
  std::unordered_map<std::string, TokenId> index_;
};

std::vector<TokenId> ToIds(std::span<const std::string> words,
                           const Vocab& vocab);

// Full tokenization: DocumentWords -> ids -> truncation to spec.max_len.
std::vector<TokenId> Tokenize(std::string_view title, std::string_view body,
                              const TokenizerSpec& spec, const Vocab& vocab);

// Space-joined words of non-reserved ids.
std::string Detokenize(std::span<const TokenId> ids, const Vocab& vocab);

// Normalized surface form used to compare mentions across documents.
std::string NormalizeSurface(std::string_view surface);

// Re-derives doc.words from title and body. Mention surfaces are kept as is.
void Retokenize(Document& doc, const TokenizerSpec& spec);

}  // namespace salience

#endif  // SALIENCE_CORPUS_TOKENIZER_H_
