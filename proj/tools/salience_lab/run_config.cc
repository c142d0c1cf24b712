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

#include "salience_lab/run_config.h"

#include "salience/errors.h"
#include "salience/io.h"

namespace salience::cli {
namespace {

using nlohmann::json;

std::vector<std::string> SplitKey(const std::string& key) {
  std::vector<std::string> parts;
  size_t begin = 0;
  while (true) {
    const size_t dot = key.find('.', begin);
    parts.push_back(key.substr(begin, dot - begin));
    if (parts.back().empty()) throw ConfigError("malformed config key '" + key + "'");
    if (dot == std::string::npos) return parts;
    begin = dot + 1;
  }
}

bool SameKind(const json& def, const json& v) {
  if (def.is_number_unsigned()) return v.is_number_unsigned();
  if (def.is_number_integer()) return v.is_number_integer();
  if (def.is_number_float()) return v.is_number();
  return def.type() == v.type();
}

const char* KindName(const json& def) {
  if (def.is_number_unsigned()) return "a non-negative integer";
  if (def.is_number_integer()) return "an integer";
  if (def.is_number()) return "a number";
  if (def.is_boolean()) return "a boolean";
  if (def.is_string()) return "a string";
  if (def.is_array()) return "an array";
  return "an object";
}

// Leaf-wise merge that rejects unknown keys and kind changes.
void MergeChecked(json& into, const json& from, const std::string& prefix) {
  if (!from.is_object()) throw ConfigError("config section '" + prefix + "' must be an object");
  for (const auto& [k, v] : from.items()) {
    const std::string key = prefix.empty() ? k : prefix + "." + k;
    if (!into.contains(k)) throw ConfigError("unknown config key '" + key + "'");
    json& slot = into[k];
    if (slot.is_object()) {
      MergeChecked(slot, v, key);
    } else if (!SameKind(slot, v)) {
      throw ConfigError("config key '" + key + "' must be " + KindName(slot));
    } else {
      slot = v;
    }
  }
}

template <typename T>
T As(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config key '") + key + "': " + e.what());
  }
}

}  // namespace

json DefaultRunConfig() {
  return json::parse(R"({
    "seed": 1,
    "paths": {"corpus": "", "out": "out", "model": "", "predictions": "",
              "teachers": [], "transfer": []},
    "tokenizer": {"lowercase": true, "drop_punctuation": true, "max_len": 128},
    "synth": {"n_docs": 275, "doc_len_min": 40, "doc_len_max": 64,
              "vocab_size": 8, "entity_names": 6,
              "entities_per_doc_min": 3, "entities_per_doc_max": 6,
              "negatives_per_doc": 2, "nested_negative_prob": 0.3,
              "lead_mention_prob": 0.3, "min_frequency": 3,
              "max_first_offset_fraction": 0.1,
              "split": [0.7272727272727273, 0.09090909090909091, 0.18181818181818182]},
    "encoder": {"d_model": 32, "n_layers": 2, "n_heads": 4, "d_ff": 64,
                "max_len": 128, "dropout": 0.0},
    "train": {"head": "pooling", "epochs": 20, "batch_size": 8,
              "learning_rate": 0.002, "weight_decay": 0.01, "alpha": 0.01,
              "reweight": true, "non_overlapping_samples": false},
    "distill": {"t_teacher": 1.0, "t_student": 1.0, "ensemble": "default",
                "members": 4, "student_head": "pooling"},
    "metrics": {"threshold": 0.5, "bins": 10, "k": [1, 5],
                "aggregation": "first", "split": "test"},
    "calibrate": {"temperature": 1.0},
    "score": {"split": "all"},
    "analysis": {"sweep": []},
    "speedup": {"salient": 0.0, "nonsalient": 0.0}
  })");
}

RunConfig::RunConfig() : doc_(DefaultRunConfig()) {}

void RunConfig::MergeFile(const std::string& path) {
  json file;
  try {
    file = json::parse(ReadFile(path));
  } catch (const json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  } catch (const DataError& e) {
    throw ConfigError(e.what());
  }
  if (file.is_object() && file.contains("manifest_version")) file = file.at("config");
  MergeChecked(doc_, file, "");
}

void RunConfig::Set(const std::string& key, const std::string& value) {
  json v;
  try {
    v = json::parse(value);
  } catch (const json::exception&) {
    v = value;
  }
  // Bare words such as 1e-3 parse as numbers; quoted or unparsable ones stay text.
  const json& def = Get(key);
  if (def.is_string() && !v.is_string()) v = value;
  if (def.is_number_float() && v.is_number()) v = v.get<double>();
  Set(key, std::move(v));
}

void RunConfig::Set(const std::string& key, json value) {
  const auto parts = SplitKey(key);
  json patch = std::move(value);
  for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
    patch = json{{*it, std::move(patch)}};
  }
  MergeChecked(doc_, patch, "");
}

const json& RunConfig::Get(const std::string& key) const {
  const json* node = &doc_;
  for (const auto& part : SplitKey(key)) {
    if (!node->is_object() || !node->contains(part)) {
      throw ConfigError("unknown config key '" + key + "'");
    }
    node = &node->at(part);
  }
  return *node;
}

std::string RunConfig::Path(const std::string& key) const {
  return Get("paths." + key).get<std::string>();
}

uint64_t RunConfig::Seed() const { return doc_.at("seed").get<uint64_t>(); }

TokenizerSpec RunConfig::Tokenizer() const {
  const json& t = doc_.at("tokenizer");
  TokenizerSpec s;
  s.lowercase = As<bool>(t, "lowercase");
  s.drop_punctuation = As<bool>(t, "drop_punctuation");
  s.max_len = As<size_t>(t, "max_len");
  return s;
}

SyntheticConfig RunConfig::Synthetic() const {
  const json& s = doc_.at("synth");
  SyntheticConfig c;
  c.n_docs = As<size_t>(s, "n_docs");
  c.doc_len_min = As<size_t>(s, "doc_len_min");
  c.doc_len_max = As<size_t>(s, "doc_len_max");
  c.vocab_size = As<size_t>(s, "vocab_size");
  c.entity_names = As<size_t>(s, "entity_names");
  c.entities_per_doc_min = As<size_t>(s, "entities_per_doc_min");
  c.entities_per_doc_max = As<size_t>(s, "entities_per_doc_max");
  c.negatives_per_doc = As<size_t>(s, "negatives_per_doc");
  c.nested_negative_prob = As<double>(s, "nested_negative_prob");
  c.lead_mention_prob = As<double>(s, "lead_mention_prob");
  c.salient_rule.min_frequency = As<int64_t>(s, "min_frequency");
  c.salient_rule.max_first_offset_fraction = As<double>(s, "max_first_offset_fraction");
  c.seed = Seed();
  c.Validate();
  return c;
}

std::array<double, 3> RunConfig::SplitRatios() const {
  const auto v = As<std::vector<double>>(doc_.at("synth"), "split");
  if (v.size() != 3) throw ConfigError("synth.split needs three ratios");
  return {v[0], v[1], v[2]};
}

EncoderConfig RunConfig::Encoder() const {
  const json& e = doc_.at("encoder");
  EncoderConfig c;
  c.d_model = As<size_t>(e, "d_model");
  c.n_layers = As<size_t>(e, "n_layers");
  c.n_heads = As<size_t>(e, "n_heads");
  c.d_ff = As<size_t>(e, "d_ff");
  c.max_len = As<size_t>(e, "max_len");
  c.dropout_rate = As<double>(e, "dropout");
  return c;
}

TrainConfig RunConfig::Train() const {
  const json& t = doc_.at("train");
  TrainConfig c;
  c.head_kind = ParseHeadKind(As<std::string>(t, "head"));
  c.epochs = As<size_t>(t, "epochs");
  c.batch_size = As<size_t>(t, "batch_size");
  c.learning_rate = As<double>(t, "learning_rate");
  c.weight_decay = As<double>(t, "weight_decay");
  c.reweight.alpha = As<double>(t, "alpha");
  c.reweight.enabled = As<bool>(t, "reweight");
  c.non_overlapping_samples = As<bool>(t, "non_overlapping_samples");
  c.seed = Seed();
  c.validation_aggregation = AggregationMode();
  c.Validate();
  return c;
}

DistillConfig RunConfig::Distill() const {
  const json& d = doc_.at("distill");
  const TrainConfig t = Train();
  DistillConfig c;
  c.t_teacher = As<double>(d, "t_teacher");
  c.t_student = As<double>(d, "t_student");
  c.student_head = ParseHeadKind(As<std::string>(d, "student_head"));
  c.epochs = t.epochs;
  c.batch_size = t.batch_size;
  c.learning_rate = t.learning_rate;
  c.weight_decay = t.weight_decay;
  c.seed = t.seed;
  c.validation_aggregation = t.validation_aggregation;
  c.Validate();
  return c;
}

MetricsOptions RunConfig::Metrics() const {
  const json& m = doc_.at("metrics");
  MetricsOptions o;
  o.threshold = As<double>(m, "threshold");
  o.bins = As<size_t>(m, "bins");
  o.ks = As<std::vector<size_t>>(m, "k");
  if (!(o.threshold >= 0.0 && o.threshold <= 1.0)) {
    throw ConfigError("metrics.threshold must lie in [0,1]");
  }
  if (o.bins == 0) throw ConfigError("metrics.bins must be >= 1");
  for (size_t k : o.ks) {
    if (k == 0) throw ConfigError("metrics.k entries must be >= 1");
  }
  return o;
}

Aggregation RunConfig::AggregationMode() const {
  return ParseAggregation(As<std::string>(doc_.at("metrics"), "aggregation"));
}

std::vector<std::pair<double, double>> RunConfig::SweepPairs() const {
  std::vector<std::pair<double, double>> out;
  for (const auto& p : doc_.at("analysis").at("sweep")) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
      throw ConfigError("analysis.sweep entries must be [t_teacher, t_student]");
    }
    out.emplace_back(p[0].get<double>(), p[1].get<double>());
  }
  return out;
}

}  // namespace salience::cli
