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

#include "salience/heads/predictions_io.h"

#include <cmath>
#include <sstream>

#include "json.hpp"
#include "salience/errors.h"
#include "salience/io.h"

namespace salience {

void WritePredictions(const PredictionSet& set, std::ostream& out) {
  for (const auto& m : set.mentions) {
    nlohmann::ordered_json j;
    j["doc_id"] = m.doc_id;
    j["entity_id"] = m.entity_id;
    j["token_start"] = m.token_start;
    j["token_end"] = m.token_end;
    j["score"] = m.score;
    j["gold"] = m.gold ? nlohmann::ordered_json(*m.gold) : nlohmann::ordered_json();
    j["head_kind"] = set.head_kind;
    out << j.dump() << '\n';
  }
}

void SavePredictions(const PredictionSet& set, const std::string& path) {
  std::ostringstream out;
  WritePredictions(set, out);
  WriteFileAtomic(path, out.str());
}

PredictionSet ReadPredictions(std::istream& in, const std::string& source) {
  PredictionSet set;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const char* field = "<record>";
    try {
      const auto j = nlohmann::json::parse(line);
      MentionPrediction m;
      field = "doc_id";
      m.doc_id = j.at(field).get<std::string>();
      field = "entity_id";
      m.entity_id = j.at(field).get<std::string>();
      field = "token_start";
      m.token_start = j.at(field).get<int64_t>();
      field = "token_end";
      m.token_end = j.at(field).get<int64_t>();
      field = "score";
      m.score = j.at(field).get<double>();
      if (!(m.score >= 0.0 && m.score <= 1.0)) {
        throw FormatError(source, line_no, field, "must lie in [0,1]");
      }
      field = "gold";
      if (!j.at(field).is_null()) m.gold = j.at(field).get<int>();
      field = "head_kind";
      set.head_kind = j.at(field).get<std::string>();
      m.logit = std::log(m.score) - std::log1p(-m.score);
      set.mentions.push_back(std::move(m));
    } catch (const nlohmann::json::exception& ex) {
      throw FormatError(source, line_no, field, ex.what());
    }
  }
  return set;
}

PredictionSet LoadPredictions(const std::string& path) {
  std::istringstream in(ReadFile(path));
  return ReadPredictions(in, path);
}

}  // namespace salience
