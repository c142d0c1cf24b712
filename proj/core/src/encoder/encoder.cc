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

#include "salience/encoder/encoder.h"

#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "salience/errors.h"
#include "salience/tensor/ops.h"

namespace salience {
namespace {

Tensor NormalInit(std::vector<size_t> shape, Rng& rng) {
  Tensor t(std::move(shape));
  for (double& v : t.values()) v = rng.Normal();
  return t;
}

Tensor UniformInit(std::vector<size_t> shape, double bound, Rng& rng) {
  Tensor t(std::move(shape));
  for (double& v : t.values()) v = rng.Uniform(-bound, bound);
  return t;
}

std::string LayerName(size_t layer, const char* leaf) {
  return "encoder.layer" + std::to_string(layer) + "." + leaf;
}

Var Linear(const ParameterSet& p, const Var& x, const std::string& w,
           const std::string& b) {
  return ops::Add(ops::MatMul(x, p.Get(w)), p.Get(b));
}

Var MaybeDropout(const Var& x, double rate, Rng* rng) {
  return rng && rate > 0.0 ? ops::Dropout(x, rate, *rng) : x;
}

}  // namespace

void EncoderConfig::Validate() const {
  if (vocab_size <= static_cast<size_t>(kNumReservedIds)) {
    throw ConfigError("encoder vocab_size must exceed the reserved id block");
  }
  if (d_model == 0 || n_layers == 0 || n_heads == 0 || d_ff == 0 ||
      max_len == 0) {
    throw ConfigError("encoder dimensions must be positive");
  }
  if (d_model % n_heads != 0) {
    throw ConfigError("d_model " + std::to_string(d_model) +
                      " is not divisible by n_heads " +
                      std::to_string(n_heads));
  }
  if (!(dropout_rate >= 0.0 && dropout_rate < 1.0)) {
    throw ConfigError("dropout_rate must lie in [0, 1)");
  }
}

void AddEncoderParameters(const EncoderConfig& config, ParameterSet& params,
                          Rng& rng) {
  config.Validate();
  const size_t d = config.d_model, ff = config.d_ff;
  params.Add("encoder.token_embedding", NormalInit({config.vocab_size, d}, rng));
  params.Add("encoder.position_embedding",
             NormalInit({config.max_len, d}, rng));
  const double xavier = std::sqrt(6.0 / static_cast<double>(d + d));
  const double in_d = 1.0 / std::sqrt(static_cast<double>(d));
  const double in_ff = 1.0 / std::sqrt(static_cast<double>(ff));
  for (size_t l = 0; l < config.n_layers; ++l) {
    params.Add(LayerName(l, "ln1.gamma"), Tensor({d}, 1.0));
    params.Add(LayerName(l, "ln1.beta"), Tensor({d}));
    for (const char* w : {"attn.wq", "attn.wk", "attn.wv"}) {
      params.Add(LayerName(l, w), UniformInit({d, d}, xavier, rng));
    }
    for (const char* b : {"attn.bq", "attn.bk", "attn.bv"}) {
      params.Add(LayerName(l, b), Tensor({d}));
    }
    params.Add(LayerName(l, "attn.wo"), UniformInit({d, d}, in_d, rng));
    params.Add(LayerName(l, "attn.bo"), Tensor({d}));
    params.Add(LayerName(l, "ln2.gamma"), Tensor({d}, 1.0));
    params.Add(LayerName(l, "ln2.beta"), Tensor({d}));
    params.Add(LayerName(l, "ff.w1"), UniformInit({d, ff}, in_d, rng));
    params.Add(LayerName(l, "ff.b1"), UniformInit({ff}, in_d, rng));
    params.Add(LayerName(l, "ff.w2"), UniformInit({ff, d}, in_ff, rng));
    params.Add(LayerName(l, "ff.b2"), UniformInit({d}, in_ff, rng));
  }
  params.Add("encoder.final_ln.gamma", Tensor({d}, 1.0));
  params.Add("encoder.final_ln.beta", Tensor({d}));
}

Var Encode(const EncoderConfig& config, const ParameterSet& params,
           std::span<const TokenId> tokens, std::span<const bool> mask,
           Rng* dropout_rng) {
  const size_t n = tokens.size();
  if (n == 0) throw DomainError("encode: empty token sequence");
  if (n > config.max_len) {
    throw OverflowError("encode: sequence of " + std::to_string(n) +
                        " tokens exceeds max_len " +
                        std::to_string(config.max_len));
  }
  if (!mask.empty() && mask.size() != n) {
    throw ShapeError("encode: mask length " + std::to_string(mask.size()) +
                     " for " + std::to_string(n) + " tokens");
  }
  for (TokenId id : tokens) {
    if (id < 0 || static_cast<size_t>(id) >= config.vocab_size) {
      throw DomainError("encode: token id " + std::to_string(id) +
                        " outside vocabulary of " +
                        std::to_string(config.vocab_size));
    }
  }
  std::vector<int32_t> positions(n);
  std::iota(positions.begin(), positions.end(), 0);
  Var x = ops::Add(ops::EmbeddingGather(params.Get("encoder.token_embedding"),
                                        tokens),
                   ops::EmbeddingGather(
                       params.Get("encoder.position_embedding"), positions));
  x = MaybeDropout(x, config.dropout_rate, dropout_rng);

  const size_t dk = config.d_model / config.n_heads;
  const double scale = 1.0 / std::sqrt(static_cast<double>(dk));
  for (size_t l = 0; l < config.n_layers; ++l) {
    Var h = ops::LayerNorm(x, params.Get(LayerName(l, "ln1.gamma")),
                           params.Get(LayerName(l, "ln1.beta")));
    Var q = Linear(params, h, LayerName(l, "attn.wq"), LayerName(l, "attn.bq"));
    Var k = Linear(params, h, LayerName(l, "attn.wk"), LayerName(l, "attn.bk"));
    Var v = Linear(params, h, LayerName(l, "attn.wv"), LayerName(l, "attn.bv"));
    std::vector<Var> heads;
    heads.reserve(config.n_heads);
    for (size_t hd = 0; hd < config.n_heads; ++hd) {
      const size_t b = hd * dk, e = b + dk;
      Var qh = config.n_heads == 1 ? q : ops::SliceColumns(q, b, e);
      Var kh = config.n_heads == 1 ? k : ops::SliceColumns(k, b, e);
      Var vh = config.n_heads == 1 ? v : ops::SliceColumns(v, b, e);
      Var attn = ops::Softmax(ops::Scale(ops::MatMulNT(qh, kh), scale), mask);
      attn = MaybeDropout(attn, config.dropout_rate, dropout_rng);
      heads.push_back(ops::MatMul(attn, vh));
    }
    Var merged = heads.size() == 1 ? heads[0] : ops::Concat(heads);
    Var o = Linear(params, merged, LayerName(l, "attn.wo"),
                   LayerName(l, "attn.bo"));
    x = ops::Add(x, MaybeDropout(o, config.dropout_rate, dropout_rng));

    Var h2 = ops::LayerNorm(x, params.Get(LayerName(l, "ln2.gamma")),
                            params.Get(LayerName(l, "ln2.beta")));
    Var f = ops::Relu(
        Linear(params, h2, LayerName(l, "ff.w1"), LayerName(l, "ff.b1")));
    f = Linear(params, f, LayerName(l, "ff.w2"), LayerName(l, "ff.b2"));
    x = ops::Add(x, MaybeDropout(f, config.dropout_rate, dropout_rng));
  }
  return ops::LayerNorm(x, params.Get("encoder.final_ln.gamma"),
                        params.Get("encoder.final_ln.beta"));
}

}  // namespace salience
