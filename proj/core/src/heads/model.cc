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

#include "salience/heads/model.h"

#include <filesystem>

#include "json.hpp"
#include "salience/errors.h"
#include "salience/heads/mlp_head.h"
#include "salience/io.h"
#include "salience/tensor/checkpoint.h"

namespace salience {
namespace {

constexpr int kModelFormat = 1;

}  // namespace

std::string_view ToString(HeadKind kind) {
  switch (kind) {
    case HeadKind::kTagging: return "tagging";
    case HeadKind::kPooling: return "pooling";
    case HeadKind::kPoolingWithTags: return "pooling-tags";
    case HeadKind::kStandardCls: return "standard";
  }
  return "pooling";
}

HeadKind ParseHeadKind(std::string_view name) {
  if (name == "tagging") return HeadKind::kTagging;
  if (name == "pooling") return HeadKind::kPooling;
  if (name == "pooling-tags") return HeadKind::kPoolingWithTags;
  if (name == "standard") return HeadKind::kStandardCls;
  throw ConfigError("unknown head kind '" + std::string(name) + "'");
}

bool UsesCandidateTags(HeadKind kind) {
  return kind == HeadKind::kTagging || kind == HeadKind::kPoolingWithTags;
}

size_t HeadInputDim(HeadKind kind, size_t d_model) {
  return kind == HeadKind::kPooling || kind == HeadKind::kPoolingWithTags
             ? 2 * d_model
             : d_model;
}

SalienceModel SalienceModel::Create(const Vocab& vocab, EncoderConfig encoder,
                                    HeadKind head, uint64_t seed) {
  SalienceModel m;
  encoder.vocab_size = vocab.size();
  encoder.seed = seed;
  encoder.Validate();
  m.encoder = encoder;
  m.head = head;
  m.vocab = vocab;
  Rng rng(seed);
  AddEncoderParameters(m.encoder, m.params, rng);
  AddMlpHead(HeadInputDim(head, encoder.d_model), m.params, rng);
  return m;
}

void SalienceModel::Save(const std::string& dir) const {
  nlohmann::ordered_json config;
  config["format"] = kModelFormat;
  config["head_kind"] = std::string(ToString(head));
  config["encoder"] = {{"vocab_size", encoder.vocab_size},
                       {"d_model", encoder.d_model},
                       {"n_layers", encoder.n_layers},
                       {"n_heads", encoder.n_heads},
                       {"d_ff", encoder.d_ff},
                       {"max_len", encoder.max_len},
                       {"dropout_rate", encoder.dropout_rate},
                       {"seed", encoder.seed}};
  std::filesystem::create_directories(dir);
  WriteFileAtomic(dir + "/config.json", config.dump(2) + "\n");
  WriteFileAtomic(dir + "/vocab.json",
                  nlohmann::json(vocab.words()).dump(0) + "\n");
  SaveCheckpoint(params, dir + "/weights.ckpt");
}

SalienceModel SalienceModel::Load(const std::string& dir) {
  SalienceModel m;
  try {
    const auto config = nlohmann::json::parse(ReadFile(dir + "/config.json"));
    if (config.at("format").get<int>() != kModelFormat) {
      throw DataError(dir + "/config.json: unsupported model format");
    }
    m.head = ParseHeadKind(config.at("head_kind").get<std::string>());
    const auto& e = config.at("encoder");
    m.encoder.vocab_size = e.at("vocab_size").get<size_t>();
    m.encoder.d_model = e.at("d_model").get<size_t>();
    m.encoder.n_layers = e.at("n_layers").get<size_t>();
    m.encoder.n_heads = e.at("n_heads").get<size_t>();
    m.encoder.d_ff = e.at("d_ff").get<size_t>();
    m.encoder.max_len = e.at("max_len").get<size_t>();
    m.encoder.dropout_rate = e.at("dropout_rate").get<double>();
    m.encoder.seed = e.at("seed").get<uint64_t>();
    const auto words = nlohmann::json::parse(ReadFile(dir + "/vocab.json"));
    m.vocab = Vocab::FromWords(words.get<std::vector<std::string>>());
  } catch (const nlohmann::json::exception& ex) {
    throw DataError(dir + ": malformed model files: " + ex.what());
  }
  m.encoder.Validate();
  if (m.vocab.size() != m.encoder.vocab_size) {
    throw DataError(dir + ": vocab.json size disagrees with config.json");
  }
  m.params = LoadCheckpoint(dir + "/weights.ckpt");
  // Shapes must agree with a freshly built model of the same config.
  const SalienceModel ref = Create(m.vocab, m.encoder, m.head, m.encoder.seed);
  if (ref.params.names().size() != m.params.names().size()) {
    throw DataError(dir + ": checkpoint does not match model config");
  }
  for (const auto& name : ref.params.names()) {
    if (!m.params.Contains(name) ||
        !m.params.Get(name).value().SameShape(ref.params.Get(name).value())) {
      throw DataError(dir + ": checkpoint parameter '" + name +
                      "' missing or misshapen");
    }
  }
  return m;
}

SalienceModel SalienceModel::Clone() const {
  SalienceModel m;
  m.encoder = encoder;
  m.head = head;
  m.vocab = vocab;
  m.params = params.Clone();
  return m;
}

std::vector<TokenId> SalienceModel::DocumentIds(const Document& doc) const {
  return ToIds(doc.words, vocab);
}

}  // namespace salience
