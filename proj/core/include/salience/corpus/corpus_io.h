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

#ifndef SALIENCE_CORPUS_CORPUS_IO_H_
#define SALIENCE_CORPUS_CORPUS_IO_H_

#include <istream>
#include <ostream>
#include <string>

#include "salience/corpus/tokenizer.h"
#include "salience/corpus/types.h"
#include "salience/io.h"

namespace salience {

// JSONL corpus, one document per line:
//   {doc_id, title, body, split,
//    entities: [{entity_id, canonical_name, aliases, references,
//                wiki_entity|null, salience}],
//    mentions: [{entity_id, token_start, token_end, surface}]}
// Document::words is derived with `spec` on load. Errors are FormatError
// with the 1-based line number and field name; `source` names the stream.
Corpus ReadCorpus(std::istream& in, const TokenizerSpec& spec = {},
                  const std::string& source = "<stream>");
void WriteCorpus(const Corpus& corpus, std::ostream& out);

Corpus LoadCorpus(const std::string& path, const TokenizerSpec& spec = {});
// Atomic: written to a temporary sibling and renamed into place.
void SaveCorpus(const Corpus& corpus, const std::string& path);

// Writes `contents` to path via temp file + rename.
}  // namespace salience

#endif  // SALIENCE_CORPUS_CORPUS_IO_H_
