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

#include "salience/corpus/tokenizer.h"

#include <algorithm>
#include <set>

#include "salience/errors.h"

namespace salience {
namespace {

constexpr std::string_view kReservedWords[kNumReservedIds] = {
    "[PAD]", "[UNK]", "[CAND]", "[/CAND]", kSepWord, "[CLS]"};

bool IsSpace(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool IsPunct(unsigned char c) {
  return c < 0x80 && ((c >= '!' && c <= '/') || (c >= ':' && c <= '@') ||
                      (c >= '[' && c <= '`') || (c >= '{' && c <= '~'));
}

}  // namespace

std::vector<std::string> SplitWords(std::string_view text,
                                    const TokenizerSpec& spec) {
  std::vector<std::string> words;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) words.push_back(std::move(current));
    current.clear();
  };
  for (unsigned char c : text) {
    if (IsSpace(c)) {
      flush();
    } else if (IsPunct(c)) {
      // Dropped punctuation joins its neighbours ("U.S." -> "us").
      if (spec.drop_punctuation) continue;
      flush();
      words.emplace_back(1, static_cast<char>(c));
    } else {
      if (spec.lowercase && c >= 'A' && c <= 'Z') c = c - 'A' + 'a';
      current.push_back(static_cast<char>(c));
    }
  }
  flush();
  return words;
}

std::vector<std::string> DocumentWords(std::string_view title,
                                       std::string_view body,
                                       const TokenizerSpec& spec) {
  std::vector<std::string> words = SplitWords(title, spec);
  std::vector<std::string> body_words = SplitWords(body, spec);
  if (!words.empty() && !body_words.empty()) words.emplace_back(kSepWord);
  words.insert(words.end(), std::make_move_iterator(body_words.begin()),
               std::make_move_iterator(body_words.end()));
  return words;
}

Vocab::Vocab() {
  for (TokenId id = 0; id < kNumReservedIds; ++id) {
    words_.emplace_back(kReservedWords[id]);
    index_.emplace(words_.back(), id);
  }
}

Vocab Vocab::FromWords(std::vector<std::string> words) {
  Vocab v;
  if (words.size() < static_cast<size_t>(kNumReservedIds)) {
    throw DataError("vocabulary shorter than the reserved id block");
  }
  for (TokenId id = 0; id < kNumReservedIds; ++id) {
    if (words[id] != kReservedWords[id]) {
      throw DataError("vocabulary reserved entry " + std::to_string(id) +
                      " is '" + words[id] + "', expected '" +
                      std::string(kReservedWords[id]) + "'");
    }
  }
  for (size_t i = kNumReservedIds; i < words.size(); ++i) {
    if (v.index_.contains(words[i])) {
      throw DataError("duplicate vocabulary entry '" + words[i] + "'");
    }
    v.index_.emplace(words[i], static_cast<TokenId>(i));
    v.words_.push_back(std::move(words[i]));
  }
  return v;
}

Vocab Vocab::Build(const Corpus& corpus) {
  std::set<std::string> distinct;
  for (const auto& doc : corpus.documents) {
    for (const auto& w : doc.words) {
      if (w != kSepWord) distinct.insert(w);
    }
  }
  std::vector<std::string> words(std::begin(kReservedWords),
                                 std::end(kReservedWords));
  words.insert(words.end(), distinct.begin(), distinct.end());
  return FromWords(std::move(words));
}

TokenId Vocab::Id(std::string_view word) const {
  auto it = index_.find(std::string(word));
  return it == index_.end() ? kUnkId : it->second;
}

bool Vocab::Contains(std::string_view word) const {
  return index_.contains(std::string(word));
}

const std::string& Vocab::Word(TokenId id) const {
  if (id < 0 || static_cast<size_t>(id) >= words_.size()) {
    throw DomainError("token id " + std::to_string(id) + " outside vocabulary");
  }
  return words_[id];
}

std::vector<TokenId> ToIds(std::span<const std::string> words,
                           const Vocab& vocab) {
  std::vector<TokenId> ids;
  ids.reserve(words.size());
  for (const auto& w : words) ids.push_back(vocab.Id(w));
  return ids;
}

std::vector<TokenId> Tokenize(std::string_view title, std::string_view body,
                              const TokenizerSpec& spec, const Vocab& vocab) {
  std::vector<std::string> words = DocumentWords(title, body, spec);
  if (words.size() > spec.max_len) words.resize(spec.max_len);
  return ToIds(words, vocab);
}

std::string Detokenize(std::span<const TokenId> ids, const Vocab& vocab) {
  std::string out;
  for (TokenId id : ids) {
    if (Vocab::IsReserved(id)) continue;
    if (!out.empty()) out.push_back(' ');
    out += vocab.Word(id);
  }
  return out;
}

std::string NormalizeSurface(std::string_view surface) {
  TokenizerSpec spec;
  std::string out;
  for (const auto& w : SplitWords(surface, spec)) {
    if (!out.empty()) out.push_back(' ');
    out += w;
  }
  return out;
}

void Retokenize(Document& doc, const TokenizerSpec& spec) {
  doc.words = DocumentWords(doc.title, doc.body, spec);
}

}  // namespace salience
