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

#include "salience/tensor/ops.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "salience/errors.h"

namespace salience::ops {
namespace {

[[noreturn]] void Fail(const char* op, const std::string& what) {
  throw ShapeError(std::string(op) + ": " + what);
}

void RequireRank(const char* op, const Var& v, size_t rank) {
  if (v.value().rank() != rank) {
    Fail(op, "expected rank " + std::to_string(rank) + ", got shape " +
                 v.value().ShapeString());
  }
}

// Gradient buffer of input i, or nullptr when it needs none.
Tensor* InputGrad(Node& self, size_t i) {
  Node* in = self.inputs[i].get();
  return in->requires_grad ? &in->EnsureGrad() : nullptr;
}

const Tensor& InputValue(Node& self, size_t i) {
  return self.inputs[i]->value;
}

}  // namespace

Var MatMul(const Var& a, const Var& b) {
  RequireRank("matmul", a, 2);
  RequireRank("matmul", b, 2);
  const size_t m = a.value().dim(0), k = a.value().dim(1), n = b.value().dim(1);
  if (b.value().dim(0) != k) {
    Fail("matmul", a.value().ShapeString() + " x " + b.value().ShapeString());
  }
  Tensor out({m, n});
  const double* A = a.value().data();
  const double* B = b.value().data();
  double* C = out.data();
  for (size_t i = 0; i < m; ++i) {
    for (size_t p = 0; p < k; ++p) {
      const double aip = A[i * k + p];
      if (aip == 0.0) continue;
      const double* brow = B + p * n;
      double* crow = C + i * n;
      for (size_t j = 0; j < n; ++j) crow[j] += aip * brow[j];
    }
  }
  return MakeResult(
      std::move(out), {a, b},
      [m, k, n](Node& self) {
        const double* dC = self.grad.data();
        const double* A = InputValue(self, 0).data();
        const double* B = InputValue(self, 1).data();
        if (Tensor* gA = InputGrad(self, 0)) {
          double* dA = gA->data();
          for (size_t i = 0; i < m; ++i) {
            for (size_t p = 0; p < k; ++p) {
              const double* brow = B + p * n;
              const double* crow = dC + i * n;
              double s = 0.0;
              for (size_t j = 0; j < n; ++j) s += crow[j] * brow[j];
              dA[i * k + p] += s;
            }
          }
        }
        if (Tensor* gB = InputGrad(self, 1)) {
          double* dB = gB->data();
          for (size_t i = 0; i < m; ++i) {
            for (size_t p = 0; p < k; ++p) {
              const double aip = A[i * k + p];
              if (aip == 0.0) continue;
              const double* crow = dC + i * n;
              double* brow = dB + p * n;
              for (size_t j = 0; j < n; ++j) brow[j] += aip * crow[j];
            }
          }
        }
      },
      "matmul");
}

Var MatMulNT(const Var& a, const Var& b) {
  RequireRank("matmul_nt", a, 2);
  RequireRank("matmul_nt", b, 2);
  const size_t m = a.value().dim(0), k = a.value().dim(1), n = b.value().dim(0);
  if (b.value().dim(1) != k) {
    Fail("matmul_nt",
         a.value().ShapeString() + " x " + b.value().ShapeString() + "^T");
  }
  Tensor out({m, n});
  const double* A = a.value().data();
  const double* B = b.value().data();
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (size_t p = 0; p < k; ++p) s += A[i * k + p] * B[j * k + p];
      out.data()[i * n + j] = s;
    }
  }
  return MakeResult(
      std::move(out), {a, b},
      [m, k, n](Node& self) {
        const double* dC = self.grad.data();
        const double* A = InputValue(self, 0).data();
        const double* B = InputValue(self, 1).data();
        Tensor* gA = InputGrad(self, 0);
        Tensor* gB = InputGrad(self, 1);
        for (size_t i = 0; i < m; ++i) {
          for (size_t j = 0; j < n; ++j) {
            const double g = dC[i * n + j];
            if (g == 0.0) continue;
            if (gA) {
              double* dA = gA->data() + i * k;
              const double* brow = B + j * k;
              for (size_t p = 0; p < k; ++p) dA[p] += g * brow[p];
            }
            if (gB) {
              double* dB = gB->data() + j * k;
              const double* arow = A + i * k;
              for (size_t p = 0; p < k; ++p) dB[p] += g * arow[p];
            }
          }
        }
      },
      "matmul_nt");
}

Var Add(const Var& a, const Var& b) {
  const Tensor& A = a.value();
  const Tensor& B = b.value();
  if (A.SameShape(B)) {
    Tensor out = A;
    out.AddInPlace(B);
    return MakeResult(
        std::move(out), {a, b},
        [](Node& self) {
          for (size_t i = 0; i < 2; ++i) {
            if (Tensor* g = InputGrad(self, i)) g->AddInPlace(self.grad);
          }
        },
        "add");
  }
  if (A.rank() == 2 && B.rank() == 1 && B.dim(0) == A.dim(1)) {
    const size_t rows = A.dim(0), cols = A.dim(1);
    Tensor out = A;
    for (size_t r = 0; r < rows; ++r) {
      for (size_t c = 0; c < cols; ++c) out.data()[r * cols + c] += B[c];
    }
    return MakeResult(
        std::move(out), {a, b},
        [rows, cols](Node& self) {
          if (Tensor* g = InputGrad(self, 0)) g->AddInPlace(self.grad);
          if (Tensor* g = InputGrad(self, 1)) {
            for (size_t r = 0; r < rows; ++r) {
              for (size_t c = 0; c < cols; ++c) {
                (*g)[c] += self.grad.data()[r * cols + c];
              }
            }
          }
        },
        "add");
  }
  Fail("add", A.ShapeString() + " + " + B.ShapeString());
}

Var Scale(const Var& a, double factor) {
  Tensor out = a.value();
  for (double& v : out.values()) v *= factor;
  return MakeResult(
      std::move(out), {a},
      [factor](Node& self) {
        if (Tensor* g = InputGrad(self, 0)) {
          for (size_t i = 0; i < g->size(); ++i) {
            (*g)[i] += factor * self.grad[i];
          }
        }
      },
      "scale");
}

Var Relu(const Var& a) {
  Tensor out = a.value();
  for (double& v : out.values()) v = v > 0.0 ? v : 0.0;
  return MakeResult(
      std::move(out), {a},
      [](Node& self) {
        if (Tensor* g = InputGrad(self, 0)) {
          const Tensor& x = InputValue(self, 0);
          for (size_t i = 0; i < g->size(); ++i) {
            if (x[i] > 0.0) (*g)[i] += self.grad[i];
          }
        }
      },
      "relu");
}

Var Sigmoid(const Var& a) {
  Tensor out = a.value();
  for (double& v : out.values()) {
    v = v >= 0.0 ? 1.0 / (1.0 + std::exp(-v)) : std::exp(v) / (1.0 + std::exp(v));
  }
  return MakeResult(
      std::move(out), {a},
      [](Node& self) {
        if (Tensor* g = InputGrad(self, 0)) {
          for (size_t i = 0; i < g->size(); ++i) {
            const double y = self.value[i];
            (*g)[i] += self.grad[i] * y * (1.0 - y);
          }
        }
      },
      "sigmoid");
}

Var Softmax(const Var& a, std::span<const bool> key_mask) {
  RequireRank("softmax", a, 2);
  const size_t rows = a.value().dim(0), cols = a.value().dim(1);
  if (!key_mask.empty() && key_mask.size() != cols) {
    Fail("softmax", "mask of length " + std::to_string(key_mask.size()) +
                        " for shape " + a.value().ShapeString());
  }
  std::vector<bool> mask(key_mask.begin(), key_mask.end());
  auto keep = [&mask](size_t j) { return mask.empty() || mask[j]; };
  Tensor out({rows, cols});
  for (size_t r = 0; r < rows; ++r) {
    const double* x = a.value().data() + r * cols;
    double* y = out.data() + r * cols;
    double mx = -std::numeric_limits<double>::infinity();
    for (size_t j = 0; j < cols; ++j) {
      if (keep(j)) mx = std::max(mx, x[j]);
    }
    if (!std::isfinite(mx)) continue;  // fully masked row stays zero
    double sum = 0.0;
    for (size_t j = 0; j < cols; ++j) {
      y[j] = keep(j) ? std::exp(x[j] - mx) : 0.0;
      sum += y[j];
    }
    for (size_t j = 0; j < cols; ++j) y[j] /= sum;
  }
  return MakeResult(
      std::move(out), {a},
      [rows, cols](Node& self) {
        Tensor* g = InputGrad(self, 0);
        if (!g) return;
        for (size_t r = 0; r < rows; ++r) {
          const double* y = self.value.data() + r * cols;
          const double* dy = self.grad.data() + r * cols;
          double dot = 0.0;
          for (size_t j = 0; j < cols; ++j) dot += dy[j] * y[j];
          double* dx = g->data() + r * cols;
          for (size_t j = 0; j < cols; ++j) dx[j] += y[j] * (dy[j] - dot);
        }
      },
      "softmax");
}

Var LayerNorm(const Var& x, const Var& gamma, const Var& beta, double eps) {
  RequireRank("layer_norm", x, 2);
  const size_t rows = x.value().dim(0), cols = x.value().dim(1);
  if (gamma.value().shape() != std::vector<size_t>{cols} ||
      beta.value().shape() != std::vector<size_t>{cols}) {
    Fail("layer_norm", "x " + x.value().ShapeString() + ", gamma " +
                           gamma.value().ShapeString() + ", beta " +
                           beta.value().ShapeString());
  }
  Tensor out({rows, cols});
  Tensor xhat({rows, cols});
  std::vector<double> inv_std(rows);
  const double* g = gamma.value().data();
  const double* b = beta.value().data();
  for (size_t r = 0; r < rows; ++r) {
    const double* in = x.value().data() + r * cols;
    double mean = 0.0;
    for (size_t j = 0; j < cols; ++j) mean += in[j];
    mean /= static_cast<double>(cols);
    double var = 0.0;
    for (size_t j = 0; j < cols; ++j) var += (in[j] - mean) * (in[j] - mean);
    var /= static_cast<double>(cols);
    inv_std[r] = 1.0 / std::sqrt(var + eps);
    for (size_t j = 0; j < cols; ++j) {
      const double h = (in[j] - mean) * inv_std[r];
      xhat.data()[r * cols + j] = h;
      out.data()[r * cols + j] = h * g[j] + b[j];
    }
  }
  return MakeResult(
      std::move(out), {x, gamma, beta},
      [rows, cols, xhat = std::move(xhat),
       inv_std = std::move(inv_std)](Node& self) {
        const double* dy = self.grad.data();
        const double* g = InputValue(self, 1).data();
        Tensor* dx = InputGrad(self, 0);
        Tensor* dgamma = InputGrad(self, 1);
        Tensor* dbeta = InputGrad(self, 2);
        const double n = static_cast<double>(cols);
        for (size_t r = 0; r < rows; ++r) {
          const double* h = xhat.data() + r * cols;
          const double* d = dy + r * cols;
          if (dgamma || dbeta) {
            for (size_t j = 0; j < cols; ++j) {
              if (dgamma) (*dgamma)[j] += d[j] * h[j];
              if (dbeta) (*dbeta)[j] += d[j];
            }
          }
          if (dx) {
            double mean_dh = 0.0, mean_dh_h = 0.0;
            for (size_t j = 0; j < cols; ++j) {
              const double dh = d[j] * g[j];
              mean_dh += dh;
              mean_dh_h += dh * h[j];
            }
            mean_dh /= n;
            mean_dh_h /= n;
            double* out = dx->data() + r * cols;
            for (size_t j = 0; j < cols; ++j) {
              const double dh = d[j] * g[j];
              out[j] += inv_std[r] * (dh - mean_dh - h[j] * mean_dh_h);
            }
          }
        }
      },
      "layer_norm");
}

Var EmbeddingGather(const Var& table, std::span<const int32_t> ids) {
  RequireRank("embedding_gather", table, 2);
  const size_t vocab = table.value().dim(0), d = table.value().dim(1);
  std::vector<int32_t> index(ids.begin(), ids.end());
  Tensor out({index.size(), d});
  for (size_t i = 0; i < index.size(); ++i) {
    if (index[i] < 0 || static_cast<size_t>(index[i]) >= vocab) {
      Fail("embedding_gather", "id " + std::to_string(index[i]) +
                                   " outside table " +
                                   table.value().ShapeString());
    }
    std::copy_n(table.value().data() + index[i] * d, d, out.data() + i * d);
  }
  return MakeResult(
      std::move(out), {table},
      [d, index = std::move(index)](Node& self) {
        Tensor* g = InputGrad(self, 0);
        if (!g) return;
        for (size_t i = 0; i < index.size(); ++i) {
          double* row = g->data() + index[i] * d;
          const double* src = self.grad.data() + i * d;
          for (size_t j = 0; j < d; ++j) row[j] += src[j];
        }
      },
      "embedding_gather");
}

namespace {

void CheckSpan(const char* op, const Var& x, size_t start, size_t end) {
  RequireRank(op, x, 2);
  if (start >= end || end > x.value().dim(0)) {
    Fail(op, "span [" + std::to_string(start) + ", " + std::to_string(end) +
                 ") over " + x.value().ShapeString());
  }
}

}  // namespace

Var MeanOverSpan(const Var& x, size_t start, size_t end) {
  CheckSpan("mean_over_span", x, start, end);
  const size_t d = x.value().dim(1);
  const double inv = 1.0 / static_cast<double>(end - start);
  Tensor out({d});
  for (size_t r = start; r < end; ++r) {
    for (size_t j = 0; j < d; ++j) out[j] += x.value().at(r, j);
  }
  for (size_t j = 0; j < d; ++j) out[j] *= inv;
  return MakeResult(
      std::move(out), {x},
      [start, end, d, inv](Node& self) {
        Tensor* g = InputGrad(self, 0);
        if (!g) return;
        for (size_t r = start; r < end; ++r) {
          for (size_t j = 0; j < d; ++j) g->at(r, j) += inv * self.grad[j];
        }
      },
      "mean_over_span");
}

Var MaxOverSpan(const Var& x, size_t start, size_t end) {
  CheckSpan("max_over_span", x, start, end);
  const size_t d = x.value().dim(1);
  Tensor out({d});
  std::vector<size_t> argmax(d, start);
  for (size_t j = 0; j < d; ++j) {
    double best = x.value().at(start, j);
    for (size_t r = start + 1; r < end; ++r) {
      const double v = x.value().at(r, j);
      if (v > best) {  // strict: first index wins ties
        best = v;
        argmax[j] = r;
      }
    }
    out[j] = best;
  }
  return MakeResult(
      std::move(out), {x},
      [d, argmax = std::move(argmax)](Node& self) {
        Tensor* g = InputGrad(self, 0);
        if (!g) return;
        for (size_t j = 0; j < d; ++j) g->at(argmax[j], j) += self.grad[j];
      },
      "max_over_span");
}

Var Concat(const std::vector<Var>& parts) {
  if (parts.empty()) Fail("concat", "no inputs");
  const size_t rank = parts[0].value().rank();
  if (rank != 1 && rank != 2) Fail("concat", "rank must be 1 or 2");
  const size_t rows = parts[0].value().rows();
  std::vector<size_t> widths;
  size_t total = 0;
  for (const auto& p : parts) {
    if (p.value().rank() != rank || p.value().rows() != rows) {
      Fail("concat", parts[0].value().ShapeString() + " with " +
                         p.value().ShapeString());
    }
    widths.push_back(p.value().cols());
    total += p.value().cols();
  }
  Tensor out(rank == 1 ? std::vector<size_t>{total}
                       : std::vector<size_t>{rows, total});
  size_t offset = 0;
  for (const auto& p : parts) {
    const size_t w = p.value().cols();
    for (size_t r = 0; r < rows; ++r) {
      std::copy_n(p.value().data() + r * w, w, out.data() + r * total + offset);
    }
    offset += w;
  }
  return MakeResult(
      std::move(out), parts,
      [rows, total, widths = std::move(widths)](Node& self) {
        size_t offset = 0;
        for (size_t i = 0; i < widths.size(); ++i) {
          const size_t w = widths[i];
          if (Tensor* g = InputGrad(self, i)) {
            for (size_t r = 0; r < rows; ++r) {
              for (size_t j = 0; j < w; ++j) {
                g->data()[r * w + j] += self.grad.data()[r * total + offset + j];
              }
            }
          }
          offset += w;
        }
      },
      "concat");
}

Var SliceColumns(const Var& x, size_t begin, size_t end) {
  RequireRank("slice_columns", x, 2);
  const size_t rows = x.value().dim(0), cols = x.value().dim(1);
  if (begin >= end || end > cols) {
    Fail("slice_columns", "[" + std::to_string(begin) + ", " +
                              std::to_string(end) + ") of " +
                              x.value().ShapeString());
  }
  const size_t w = end - begin;
  Tensor out({rows, w});
  for (size_t r = 0; r < rows; ++r) {
    std::copy_n(x.value().data() + r * cols + begin, w, out.data() + r * w);
  }
  return MakeResult(
      std::move(out), {x},
      [rows, cols, begin, w](Node& self) {
        Tensor* g = InputGrad(self, 0);
        if (!g) return;
        for (size_t r = 0; r < rows; ++r) {
          for (size_t j = 0; j < w; ++j) {
            g->data()[r * cols + begin + j] += self.grad.data()[r * w + j];
          }
        }
      },
      "slice_columns");
}

Var SliceRows(const Var& x, size_t begin, size_t end) {
  RequireRank("slice_rows", x, 2);
  const size_t rows = x.value().dim(0), cols = x.value().dim(1);
  if (begin >= end || end > rows) {
    Fail("slice_rows", "[" + std::to_string(begin) + ", " +
                           std::to_string(end) + ") of " +
                           x.value().ShapeString());
  }
  Tensor out({end - begin, cols});
  std::copy_n(x.value().data() + begin * cols, (end - begin) * cols,
              out.data());
  return MakeResult(
      std::move(out), {x},
      [begin, cols](Node& self) {
        Tensor* g = InputGrad(self, 0);
        if (!g) return;
        double* dst = g->data() + begin * cols;
        for (size_t i = 0; i < self.grad.size(); ++i) dst[i] += self.grad[i];
      },
      "slice_rows");
}

Var SelectRows(const Var& x, std::span<const size_t> indices) {
  RequireRank("select_rows", x, 2);
  const size_t rows = x.value().dim(0), cols = x.value().dim(1);
  std::vector<size_t> index(indices.begin(), indices.end());
  Tensor out({index.size(), cols});
  for (size_t i = 0; i < index.size(); ++i) {
    if (index[i] >= rows) {
      Fail("select_rows", "row " + std::to_string(index[i]) + " of " +
                              x.value().ShapeString());
    }
    std::copy_n(x.value().data() + index[i] * cols, cols,
                out.data() + i * cols);
  }
  return MakeResult(
      std::move(out), {x},
      [cols, index = std::move(index)](Node& self) {
        Tensor* g = InputGrad(self, 0);
        if (!g) return;
        for (size_t i = 0; i < index.size(); ++i) {
          for (size_t j = 0; j < cols; ++j) {
            g->data()[index[i] * cols + j] += self.grad.data()[i * cols + j];
          }
        }
      },
      "select_rows");
}

Var StackRows(const std::vector<Var>& parts) {
  if (parts.empty()) Fail("stack_rows", "no inputs");
  const size_t n = parts[0].value().size();
  Tensor out({parts.size(), n});
  for (size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].value().rank() != 1 || parts[i].value().size() != n) {
      Fail("stack_rows", parts[0].value().ShapeString() + " with " +
                             parts[i].value().ShapeString());
    }
    std::copy_n(parts[i].value().data(), n, out.data() + i * n);
  }
  return MakeResult(
      std::move(out), parts,
      [n](Node& self) {
        for (size_t i = 0; i < self.inputs.size(); ++i) {
          if (Tensor* g = InputGrad(self, i)) {
            for (size_t j = 0; j < n; ++j) (*g)[j] += self.grad[i * n + j];
          }
        }
      },
      "stack_rows");
}

Var Reshape(const Var& x, std::vector<size_t> shape) {
  if (ShapeSize(shape) != x.value().size()) {
    Fail("reshape", x.value().ShapeString() + " -> " + ShapeString(shape));
  }
  Tensor out(std::move(shape),
             std::vector<double>(x.value().values().begin(),
                                 x.value().values().end()));
  return MakeResult(
      std::move(out), {x},
      [](Node& self) {
        Tensor* g = InputGrad(self, 0);
        if (!g) return;
        for (size_t i = 0; i < g->size(); ++i) (*g)[i] += self.grad[i];
      },
      "reshape");
}

Var Dropout(const Var& x, double rate, Rng& rng) {
  if (!(rate >= 0.0 && rate < 1.0)) {
    throw DomainError("dropout: rate must lie in [0, 1)");
  }
  if (rate == 0.0) return x;
  const double keep_scale = 1.0 / (1.0 - rate);
  std::vector<double> mask(x.value().size());
  for (double& m : mask) m = rng.Uniform() < rate ? 0.0 : keep_scale;
  Tensor out = x.value();
  for (size_t i = 0; i < out.size(); ++i) out[i] *= mask[i];
  return MakeResult(
      std::move(out), {x},
      [mask = std::move(mask)](Node& self) {
        Tensor* g = InputGrad(self, 0);
        if (!g) return;
        for (size_t i = 0; i < g->size(); ++i) (*g)[i] += mask[i] * self.grad[i];
      },
      "dropout");
}

Var Sum(const Var& x) {
  double s = 0.0;
  for (double v : x.value().values()) s += v;
  return MakeResult(
      Tensor::Scalar(s), {x},
      [](Node& self) {
        Tensor* g = InputGrad(self, 0);
        if (!g) return;
        for (size_t i = 0; i < g->size(); ++i) (*g)[i] += self.grad[0];
      },
      "sum");
}

Var WeightedSum(const Var& x, const Tensor& weights) {
  if (weights.size() != x.value().size()) {
    Fail("weighted_sum", x.value().ShapeString() + " against weights " +
                             weights.ShapeString());
  }
  double s = 0.0;
  for (size_t i = 0; i < weights.size(); ++i) s += weights[i] * x.value()[i];
  return MakeResult(
      Tensor::Scalar(s), {x},
      [weights](Node& self) {
        Tensor* g = InputGrad(self, 0);
        if (!g) return;
        for (size_t i = 0; i < g->size(); ++i) {
          (*g)[i] += weights[i] * self.grad[0];
        }
      },
      "weighted_sum");
}

Var BinaryCrossEntropy(const Var& scores, std::span<const double> targets,
                       std::span<const double> weights) {
  const size_t n = scores.value().size();
  if (targets.size() != n || (!weights.empty() && weights.size() != n)) {
    Fail("binary_cross_entropy",
         "scores " + scores.value().ShapeString() + ", " +
             std::to_string(targets.size()) + " targets, " +
             std::to_string(weights.size()) + " weights");
  }
  std::vector<double> t(targets.begin(), targets.end());
  std::vector<double> w(n, 1.0);
  if (!weights.empty()) w.assign(weights.begin(), weights.end());
  double loss = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double s = std::clamp(scores.value()[i], kProbabilityClamp,
                                1.0 - kProbabilityClamp);
    loss -= w[i] * (t[i] * std::log(s) + (1.0 - t[i]) * std::log(1.0 - s));
  }
  return MakeResult(
      Tensor::Scalar(loss), {scores},
      [t = std::move(t), w = std::move(w)](Node& self) {
        Tensor* g = InputGrad(self, 0);
        if (!g) return;
        const Tensor& s = InputValue(self, 0);
        for (size_t i = 0; i < t.size(); ++i) {
          const double v = s[i];
          if (v <= kProbabilityClamp || v >= 1.0 - kProbabilityClamp) continue;
          (*g)[i] += self.grad[0] * -w[i] * (t[i] / v - (1.0 - t[i]) / (1.0 - v));
        }
      },
      "binary_cross_entropy");
}

}  // namespace salience::ops
