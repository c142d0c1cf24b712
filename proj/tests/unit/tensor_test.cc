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

#include <cmath>
#include <functional>
#include <sstream>
#include <string>

#include "salience/errors.h"
#include "salience/random.h"
#include "salience/tensor/adamw.h"
#include "salience/tensor/checkpoint.h"
#include "salience/tensor/grad_check.h"
#include "salience/tensor/ops.h"
#include "salience/tensor/parameters.h"

namespace salience {
namespace {

Tensor RandomTensor(std::vector<size_t> shape, Rng& rng, double scale = 1.0) {
  Tensor t(std::move(shape));
  for (double& v : t.values()) v = scale * rng.Normal();
  return t;
}

// Contracts `out` against a fixed random projection so that the scalar loss
// exercises every output element with a distinct weight.
Var Project(const Var& out, uint64_t seed) {
  Rng rng(seed);
  return ops::WeightedSum(out, RandomTensor(out.shape(), rng));
}

void ExpectGradOk(const std::function<Var()>& fn, ParameterSet& params,
                  double tolerance = 1e-4) {
  const GradCheckResult r = GradCheck(fn, params, {.tolerance = tolerance});
  EXPECT_TRUE(r.passed) << r.worst_parameter << "[" << r.worst_index
                        << "]: analytic " << r.worst_analytic << " numeric "
                        << r.worst_numeric << " rel " << r.max_relative_error;
  EXPECT_GT(r.elements_checked, 0u);
}

TEST(Ops, ReluOfNegativeIsZeroWithZeroGradient) {
  Var x(Tensor::Scalar(-2.0), true);
  Var y = ops::Relu(x);
  EXPECT_EQ(y.value()[0], 0.0);
  Backward(ops::Sum(y));
  EXPECT_EQ(x.grad()[0], 0.0);
}

TEST(Ops, SigmoidOfZeroIsHalf) {
  EXPECT_EQ(ops::Sigmoid(Var(Tensor::Scalar(0.0))).value()[0], 0.5);
}

TEST(Ops, MeanAndMaxOverSpan) {
  Var x(Tensor::Matrix({{1, 3}, {5, -1}}));
  // By hand: mean = [(1+5)/2, (3-1)/2], max = [5, 3].
  EXPECT_EQ(ops::MeanOverSpan(x, 0, 2).value(), Tensor::Vector({3, 1}));
  EXPECT_EQ(ops::MaxOverSpan(x, 0, 2).value(), Tensor::Vector({5, 3}));
}

TEST(Ops, MaxOverSpanRoutesGradientToFirstTiedRow) {
  Var x(Tensor::Matrix({{2, 0}, {2, 1}, {1, 1}}), true);
  Backward(ops::Sum(ops::MaxOverSpan(x, 0, 3)));
  EXPECT_EQ(x.grad(), Tensor::Matrix({{1, 0}, {0, 1}, {0, 0}}));
}

TEST(Ops, ShapeMismatchNamesPrimitive) {
  Var a(Tensor({2, 3})), b(Tensor({2, 3}));
  try {
    ops::MatMul(a, b);
    FAIL() << "expected ShapeError";
  } catch (const ShapeError& e) {
    EXPECT_NE(std::string(e.what()).find("matmul"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("[2,3]"), std::string::npos)
        << e.what();
  }
}

TEST(Ops, EmptySpanRejected) {
  Var x(Tensor({3, 2}));
  EXPECT_ANY_THROW(ops::MeanOverSpan(x, 1, 1));
  EXPECT_ANY_THROW(ops::MaxOverSpan(x, 2, 4));
}

TEST(Ops, SoftmaxRowsSumToOneAndMaskedKeysGetZero) {
  Var x(Tensor::Matrix({{1, 2, 3}, {0, 0, 0}}));
  const bool mask[] = {true, true, false};
  const Tensor y = ops::Softmax(x, mask).value();
  for (size_t r = 0; r < 2; ++r) {
    EXPECT_NEAR(y.at(r, 0) + y.at(r, 1), 1.0, 1e-15);
    EXPECT_EQ(y.at(r, 2), 0.0);
  }
  EXPECT_NEAR(y.at(0, 1) / y.at(0, 0), std::exp(1.0), 1e-12);
}

TEST(Ops, BceClampsExactZeroAndOne) {
  Var s(Tensor::Vector({0.0, 1.0}), true);
  const double targets[] = {0.0, 1.0};
  Var loss = ops::BinaryCrossEntropy(s, targets);
  EXPECT_NEAR(loss.value()[0], -2.0 * std::log(1.0 - 1e-12), 1e-15);
  Backward(loss);
  EXPECT_EQ(s.grad()[0], 0.0);
  EXPECT_EQ(s.grad()[1], 0.0);
}

TEST(Ops, DropoutRateZeroIsIdentityAndBadRateRejected) {
  Rng rng(1);
  Var x(Tensor::Vector({1, 2, 3}));
  EXPECT_EQ(ops::Dropout(x, 0.0, rng).value(), x.value());
  EXPECT_THROW(ops::Dropout(x, 1.0, rng), DomainError);
}

class PrimitiveGradTest : public ::testing::TestWithParam<uint64_t> {
 protected:
  Rng rng_{GetParam()};
  ParameterSet params_;
  Var& P(const std::string& name, std::vector<size_t> shape) {
    return params_.Add(name, RandomTensor(std::move(shape), rng_));
  }
};

TEST_P(PrimitiveGradTest, MatMul) {
  Var& a = P("a", {3, 4});
  Var& b = P("b", {4, 2});
  ExpectGradOk([&] { return Project(ops::MatMul(a, b), 1); }, params_);
}

TEST_P(PrimitiveGradTest, MatMulNT) {
  Var& a = P("a", {3, 4});
  Var& b = P("b", {5, 4});
  ExpectGradOk([&] { return Project(ops::MatMulNT(a, b), 2); }, params_);
}

TEST_P(PrimitiveGradTest, AddWithRowBroadcast) {
  Var& a = P("a", {3, 4});
  Var& b = P("b", {4});
  ExpectGradOk([&] { return Project(ops::Add(a, b), 3); }, params_);
}

TEST_P(PrimitiveGradTest, Scale) {
  Var& a = P("a", {2, 3});
  ExpectGradOk([&] { return Project(ops::Scale(a, -1.7), 4); }, params_);
}

TEST_P(PrimitiveGradTest, Relu) {
  Var& a = P("a", {3, 3});
  // Keep inputs away from the kink.
  for (double& v : a.mutable_value().values()) v += v > 0 ? 0.1 : -0.1;
  ExpectGradOk([&] { return Project(ops::Relu(a), 5); }, params_);
}

TEST_P(PrimitiveGradTest, Sigmoid) {
  Var& a = P("a", {2, 4});
  ExpectGradOk([&] { return Project(ops::Sigmoid(a), 6); }, params_);
}

TEST_P(PrimitiveGradTest, SoftmaxWithMask) {
  Var& a = P("a", {3, 5});
  const bool mask[] = {true, false, true, true, false};
  ExpectGradOk([&] { return Project(ops::Softmax(a, mask), 7); }, params_);
}

TEST_P(PrimitiveGradTest, LayerNorm) {
  Var& x = P("x", {3, 6});
  Var& g = P("gamma", {6});
  Var& b = P("beta", {6});
  ExpectGradOk([&] { return Project(ops::LayerNorm(x, g, b), 8); }, params_);
}

TEST_P(PrimitiveGradTest, EmbeddingGatherWithRepeats) {
  Var& table = P("table", {5, 3});
  const int32_t ids[] = {4, 0, 4, 2};
  ExpectGradOk([&] { return Project(ops::EmbeddingGather(table, ids), 9); },
               params_);
}

TEST_P(PrimitiveGradTest, MeanOverSpan) {
  Var& x = P("x", {5, 3});
  ExpectGradOk([&] { return Project(ops::MeanOverSpan(x, 1, 4), 10); },
               params_);
}

TEST_P(PrimitiveGradTest, MaxOverSpan) {
  Var& x = P("x", {5, 3});
  ExpectGradOk([&] { return Project(ops::MaxOverSpan(x, 0, 5), 11); },
               params_);
}

TEST_P(PrimitiveGradTest, ConcatRowsAndVectors) {
  Var& a = P("a", {2, 3});
  Var& b = P("b", {2, 1});
  Var& u = P("u", {2});
  Var& v = P("v", {4});
  ExpectGradOk(
      [&] {
        return ops::Add(Project(ops::Concat({a, b}), 12),
                        Project(ops::Concat({u, v}), 13));
      },
      params_);
}

TEST_P(PrimitiveGradTest, SlicesAndStacking) {
  Var& x = P("x", {4, 5});
  const size_t rows[] = {3, 0, 3};
  ExpectGradOk(
      [&] {
        Var s = ops::SliceColumns(ops::SliceRows(x, 1, 4), 1, 3);
        Var t = ops::SelectRows(x, rows);
        Var u = ops::StackRows({ops::Reshape(s, {6}), ops::Reshape(s, {6})});
        return ops::Add(Project(u, 14), Project(t, 15));
      },
      params_);
}

TEST_P(PrimitiveGradTest, WeightedBinaryCrossEntropy) {
  Var& z = P("z", {6});
  const double targets[] = {1, 0, 1, 0, 0, 1};
  const double weights[] = {1, 2, 0.5, 1, 3, 1};
  ExpectGradOk(
      [&] {
        return ops::BinaryCrossEntropy(ops::Sigmoid(z), targets, weights);
      },
      params_);
}

INSTANTIATE_TEST_SUITE_P(Seeds, PrimitiveGradTest, ::testing::Values(1, 2, 3));

TEST(Ops, ConcatSplitsGradientExactly) {
  Rng rng(4);
  Var a(RandomTensor({2, 3}, rng), true), b(RandomTensor({2, 2}, rng), true);
  Var out = ops::Concat({a, b});
  const Tensor w = RandomTensor(out.shape(), rng);
  Backward(ops::WeightedSum(out, w));
  double sq_in = 0.0, sq_a = 0.0, sq_b = 0.0;
  for (double v : w.values()) sq_in += v * v;
  for (double v : a.grad().values()) sq_a += v * v;
  for (double v : b.grad().values()) sq_b += v * v;
  EXPECT_NEAR(sq_a + sq_b, sq_in, 1e-12);
  EXPECT_EQ(a.grad().at(1, 2), w.at(1, 2));
  EXPECT_EQ(b.grad().at(1, 0), w.at(1, 3));
}

TEST(GradCheck, SquareAtThree) {
  ParameterSet params;
  Var& x = params.Add("x", Tensor::Scalar(3.0));
  const auto r = GradCheck([&] { return ops::WeightedSum(ops::MatMul(
                                      ops::Reshape(x, {1, 1}),
                                      ops::Reshape(x, {1, 1})), Tensor({1}, 1.0)); },
                           params, {.eps = 1e-4});
  EXPECT_LT(r.max_relative_error, 1e-8);
  EXPECT_NEAR(r.worst_analytic, 6.0, 1e-12);
}

TEST(GradCheck, LinearLossIsExact) {
  ParameterSet params;
  Var& x = params.Add("x", Tensor::Vector({0.3, -1.2, 4.0}));
  const auto r = GradCheck(
      [&] { return ops::WeightedSum(x, Tensor::Vector({2, -3, 0.5})); },
      params, {.eps = 1e-4});
  EXPECT_LT(r.max_relative_error, 1e-10);
}

TEST(GradCheck, DetectsAWrongGradient) {
  ParameterSet params;
  Var& x = params.Add("x", Tensor::Vector({1.0, 2.0}));
  auto broken = [&] {
    // Forward is sum(x^2 / 2) but backward claims gradient 2x.
    Tensor v({1});
    for (double e : x.value().values()) v[0] += e * e / 2;
    return MakeResult(std::move(v), {x}, [](Node& self) {
      Tensor& g = self.inputs[0]->EnsureGrad();
      for (size_t i = 0; i < g.size(); ++i) {
        g[i] += 2.0 * self.inputs[0]->value[i] * self.grad[0];
      }
    }, "broken");
  };
  EXPECT_FALSE(GradCheck(broken, params).passed);
}

TEST(GradCheck, EpsOutOfRangeRejected) {
  ParameterSet params;
  Var& x = params.Add("x", Tensor::Scalar(1.0));
  auto fn = [&] { return ops::Sum(x); };
  EXPECT_THROW(GradCheck(fn, params, {.eps = 1e-3}), ConfigError);
  EXPECT_THROW(GradCheck(fn, params, {.eps = 1e-8}), ConfigError);
}

TEST(GradCheck, NonFiniteLossRejected) {
  ParameterSet params;
  Var& x = params.Add("x", Tensor::Scalar(1.0));
  auto fn = [&] { return ops::Scale(ops::Sum(x), std::nan("")); };
  EXPECT_THROW(GradCheck(fn, params), NumericalError);
}

ParameterSet TwoParams(uint64_t seed) {
  Rng rng(seed);
  ParameterSet p;
  p.Add("w", RandomTensor({3, 2}, rng));
  p.Add("b", RandomTensor({2}, rng));
  return p;
}

TEST(AdamW, ZeroGradientZeroDecayIsIdentity) {
  ParameterSet p = TwoParams(1);
  const auto before = p.Snapshot();
  p.ZeroGrad();
  AdamWStep(p, {.weight_decay = 0.0});
  EXPECT_EQ(p.Snapshot(), before);
  EXPECT_EQ(p.step(), 1);
}

TEST(AdamW, ZeroGradientScalesByDecay) {
  ParameterSet p = TwoParams(2);
  const auto before = p.Snapshot();
  p.ZeroGrad();
  const double lr = 0.1, d = 0.05;
  AdamWStep(p, {.learning_rate = lr, .weight_decay = d});
  for (const auto& name : p.names()) {
    const Tensor& w = p.Get(name).value();
    for (size_t i = 0; i < w.size(); ++i) {
      EXPECT_DOUBLE_EQ(w[i], before.at(name)[i] * (1.0 - lr * d));
    }
  }
}

TEST(AdamW, FirstStepMovesByLearningRateAgainstGradientSign) {
  ParameterSet p;
  Var& x = p.Add("x", Tensor::Vector({1.0, -1.0}));
  p.ZeroGrad();
  x.node()->grad = Tensor::Vector({0.5, -2.0});
  AdamWStep(p, {.learning_rate = 0.01, .weight_decay = 0.0, .epsilon = 1e-300});
  // Bias-corrected m/sqrt(v) is sign(g) after one step.
  EXPECT_NEAR(x.value()[0], 0.99, 1e-15);
  EXPECT_NEAR(x.value()[1], -0.99, 1e-15);
}

TEST(AdamW, MissingGradientNamesParameter) {
  ParameterSet p = TwoParams(3);
  try {
    AdamWStep(p, {});
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("'w'"), std::string::npos);
  }
}

TEST(AdamW, InvalidConfigRejected) {
  EXPECT_THROW((AdamWConfig{.learning_rate = 0}.Validate()), ConfigError);
  EXPECT_THROW((AdamWConfig{.beta2 = 1.0}.Validate()), ConfigError);
}

TEST(AdamW, IdenticalRunsAreBitIdentical) {
  auto run = [] {
    ParameterSet p = TwoParams(5);
    Rng data(9);
    const Tensor xin = RandomTensor({4, 3}, data);
    for (int step = 0; step < 5; ++step) {
      p.ZeroGrad();
      Var out = ops::Add(ops::MatMul(Var(xin), p.Get("w")), p.Get("b"));
      Backward(ops::Sum(ops::Sigmoid(out)));
      AdamWStep(p, {.learning_rate = 0.05});
    }
    return p.Snapshot();
  };
  EXPECT_EQ(run(), run());
}

TEST(Parameters, DuplicateNameRejected) {
  ParameterSet p;
  p.Add("a", Tensor({1}));
  EXPECT_THROW(p.Add("a", Tensor({1})), ConfigError);
}

TEST(Checkpoint, RoundTripIsBitExact) {
  ParameterSet p = TwoParams(6);
  p.Get("b").mutable_value()[0] = -0.0;
  p.Get("b").mutable_value()[1] = 0x1.fffffffffffffp-1022;
  std::stringstream buf;
  WriteCheckpoint(p, buf);
  const std::string bytes = buf.str();
  ParameterSet q = ReadCheckpoint(buf);
  EXPECT_EQ(q.names(), p.names());
  EXPECT_EQ(q.Snapshot(), p.Snapshot());
  EXPECT_TRUE(std::signbit(q.Get("b").value()[0]));
  std::stringstream again;
  WriteCheckpoint(q, again);
  EXPECT_EQ(again.str(), bytes);
}

TEST(Checkpoint, LayoutIsLittleEndianWithHeader) {
  ParameterSet p;
  p.Add("x", Tensor::Vector({1.0}));
  std::stringstream buf;
  WriteCheckpoint(p, buf);
  const std::string s = buf.str();
  // magic(8) version(4) count(8) namelen(8) "x"(1) rank(8) dim(8) value(8)
  ASSERT_EQ(s.size(), 8u + 4 + 8 + 8 + 1 + 8 + 8 + 8);
  EXPECT_EQ(s.substr(0, 7), "SALCKPT");
  EXPECT_EQ(s[8], 1);  // version, low byte first
  EXPECT_EQ(s[12], 1);  // parameter count
  // 1.0 = 0x3FF0000000000000, stored little-endian.
  EXPECT_EQ(static_cast<unsigned char>(s[s.size() - 1]), 0x3F);
  EXPECT_EQ(static_cast<unsigned char>(s[s.size() - 2]), 0xF0);
}

TEST(Checkpoint, CorruptInputRejected) {
  ParameterSet p = TwoParams(7);
  std::stringstream buf;
  WriteCheckpoint(p, buf);
  const std::string bytes = buf.str();
  std::stringstream truncated(bytes.substr(0, bytes.size() - 3));
  EXPECT_THROW(ReadCheckpoint(truncated), DataError);
  std::stringstream trailing(bytes + "x");
  EXPECT_THROW(ReadCheckpoint(trailing), DataError);
  std::string bad = bytes;
  bad[0] = 'X';
  std::stringstream magic(bad);
  EXPECT_THROW(ReadCheckpoint(magic), DataError);
}

}  // namespace
}  // namespace salience
