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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

#include "salience/encoder/candidate_tags.h"
#include "salience/encoder/encoder.h"
#include "salience/errors.h"
#include "salience/tensor/grad_check.h"
#include "salience/tensor/ops.h"
#include "test_util.h"

namespace salience {
namespace {

using testing::Span;

EncoderConfig MicroConfig() {
  EncoderConfig c;
  c.vocab_size = 20;
  c.d_model = 16;
  c.n_layers = 1;
  c.n_heads = 2;
  c.d_ff = 32;
  c.max_len = 12;
  return c;
}

class EncoderTest : public ::testing::Test {
 protected:
  void SetUp() override {
    config_ = MicroConfig();
    config_.n_layers = 2;
    Rng rng(3);
    AddEncoderParameters(config_, params_, rng);
  }
  EncoderConfig config_;
  ParameterSet params_;
  std::vector<TokenId> tokens_ = {kClsId, 7, 8, 9, 7, 10};
};

TEST_F(EncoderTest, OutputShapeIsLengthByModelWidth) {
  const Var reps = Encode(config_, params_, tokens_);
  EXPECT_EQ(reps.shape(), (std::vector<size_t>{6, 16}));
  for (double v : reps.value().values()) EXPECT_TRUE(std::isfinite(v));
}

TEST_F(EncoderTest, DeterministicInEvalMode) {
  EXPECT_EQ(Encode(config_, params_, tokens_).value(),
            Encode(config_, params_, tokens_).value());
}

TEST_F(EncoderTest, PaddingDoesNotChangeRealRows) {
  const Tensor plain = Encode(config_, params_, tokens_).value();
  std::vector<TokenId> padded = tokens_;
  std::vector<bool> keep(tokens_.size(), true);
  for (int i = 0; i < 4; ++i) {
    padded.push_back(kPadId);
    keep.push_back(false);
  }
  std::unique_ptr<bool[]> mask(new bool[keep.size()]);
  std::copy(keep.begin(), keep.end(), mask.get());
  const Tensor masked =
      Encode(config_, params_, padded, {mask.get(), keep.size()}).value();
  for (size_t r = 0; r < tokens_.size(); ++r) {
    for (size_t c = 0; c < config_.d_model; ++c) {
      EXPECT_NEAR(masked.at(r, c), plain.at(r, c), 1e-12);
    }
  }
}

TEST_F(EncoderTest, DocumentOrderDoesNotMatter) {
  const std::vector<TokenId> other = {kClsId, 11, 12};
  const Tensor a1 = Encode(config_, params_, tokens_).value();
  const Tensor b1 = Encode(config_, params_, other).value();
  const Tensor b2 = Encode(config_, params_, other).value();
  const Tensor a2 = Encode(config_, params_, tokens_).value();
  EXPECT_EQ(a1, a2);
  EXPECT_EQ(b1, b2);
}

TEST_F(EncoderTest, InputErrors) {
  EXPECT_THROW(Encode(config_, params_, std::vector<TokenId>{}), DomainError);
  EXPECT_THROW(Encode(config_, params_, std::vector<TokenId>{kClsId, 20}),
               DomainError);
  EXPECT_THROW(Encode(config_, params_, std::vector<TokenId>(13, 7)),
               OverflowError);
  const bool mask[] = {true};
  EXPECT_THROW(Encode(config_, params_, tokens_, mask), ShapeError);
}

TEST(EncoderConfig, HeadsMustDivideWidth) {
  EncoderConfig c = MicroConfig();
  c.n_heads = 3;
  EXPECT_THROW(c.Validate(), ConfigError);
}

TEST(EncoderConfig, SameSeedSameWeights) {
  auto init = [](uint64_t seed) {
    ParameterSet p;
    Rng rng(seed);
    AddEncoderParameters(MicroConfig(), p, rng);
    return p.Snapshot();
  };
  EXPECT_EQ(init(5), init(5));
  EXPECT_NE(init(5), init(6));
}

TEST(EncoderGradient, OneLayerMicroModelMatchesFiniteDifferences) {
  const EncoderConfig config = MicroConfig();
  ParameterSet params;
  Rng rng(11);
  AddEncoderParameters(config, params, rng);
  const std::vector<TokenId> tokens = {kClsId, 6, 7, 8, 6, 9, 10, 11};
  Tensor w({tokens.size(), config.d_model});
  for (double& v : w.values()) v = rng.Normal();
  const GradCheckResult r = GradCheck(
      [&] { return ops::WeightedSum(Encode(config, params, tokens), w); },
      params);
  EXPECT_TRUE(r.passed) << r.worst_parameter << " " << r.max_relative_error;
  EXPECT_LT(r.max_relative_error, 1e-4);
}

TEST(CandidateTags, SingleSpanExample) {
  const std::vector<TokenId> a_b_c = {10, 11, 12};
  const std::vector<MentionSpan> spans = {Span(1, 2)};
  const TaggedSequence t = InsertCandidateTags(a_b_c, spans);
  const std::vector<TokenId> expected = {10, kCandOpenId, 11, kCandCloseId, 12};
  EXPECT_EQ(t.tokens, expected);
  ASSERT_EQ(t.close_indices.size(), 1u);
  EXPECT_EQ(t.close_indices[0], 3u);
  EXPECT_EQ(t.inner_spans[0], (std::pair<size_t, size_t>{2, 3}));
}

TEST(CandidateTags, OverlapRejected) {
  const std::vector<TokenId> tokens = {10, 11, 12, 13};
  const std::vector<MentionSpan> spans = {Span(0, 2), Span(1, 3)};
  EXPECT_THROW(InsertCandidateTags(tokens, spans), OverlapError);
}

TEST(CandidateTags, EmptySpanListIsIdentity) {
  const std::vector<TokenId> tokens = {10, 11, 12};
  const TaggedSequence t = InsertCandidateTags(tokens, {});
  EXPECT_EQ(t.tokens, tokens);
  EXPECT_TRUE(t.close_indices.empty());
}

TEST(CandidateTags, OverflowRejected) {
  const std::vector<TokenId> tokens = {10, 11, 12};
  const std::vector<MentionSpan> spans = {Span(0, 1)};
  EXPECT_THROW(InsertCandidateTags(tokens, spans, 4), OverflowError);
  EXPECT_NO_THROW(InsertCandidateTags(tokens, spans, 5));
}

TEST(CandidateTags, OutOfRangeRejected) {
  const std::vector<TokenId> tokens = {10, 11};
  const std::vector<MentionSpan> spans = {Span(1, 3)};
  EXPECT_THROW(InsertCandidateTags(tokens, spans), DomainError);
}

TEST(CandidateTags, CloseIndicesFollowInputOrder) {
  const std::vector<TokenId> tokens = {10, 11, 12, 13, 14};
  const std::vector<MentionSpan> spans = {Span(3, 5), Span(0, 1)};
  const TaggedSequence t = InsertCandidateTags(tokens, spans);
  // [<c> 10 </c> 11 12 <c> 13 14 </c>]
  EXPECT_EQ(t.close_indices, (std::vector<size_t>{8, 2}));
  for (size_t i = 0; i < spans.size(); ++i) {
    EXPECT_EQ(t.tokens[t.close_indices[i]], kCandCloseId);
    EXPECT_EQ(t.tokens[t.inner_spans[i].first - 1], kCandOpenId);
  }
}

TEST(CandidateTags, StrippingRecoversTheInputForRandomSpanSets) {
  Rng rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const size_t n = 1 + rng.UniformInt(15);
    std::vector<TokenId> tokens(n);
    for (auto& t : tokens) t = static_cast<TokenId>(6 + rng.UniformInt(30));
    std::vector<MentionSpan> spans;
    size_t pos = 0;
    while (pos < n) {
      pos += rng.UniformInt(3);
      if (pos >= n) break;
      const size_t end = std::min(n, pos + 1 + rng.UniformInt(3));
      spans.push_back(Span(static_cast<int64_t>(pos), static_cast<int64_t>(end)));
      pos = end;
    }
    const TaggedSequence t = InsertCandidateTags(tokens, spans);
    EXPECT_EQ(t.tokens.size(), n + 2 * spans.size());
    EXPECT_EQ(StripCandidateTags(t.tokens), tokens);
    for (size_t i = 0; i < spans.size(); ++i) {
      const auto [b, e] = t.inner_spans[i];
      EXPECT_EQ(e - b, static_cast<size_t>(spans[i].length()));
      EXPECT_EQ(t.tokens[b], tokens[static_cast<size_t>(spans[i].token_start)]);
    }
  }
}

}  // namespace
}  // namespace salience
