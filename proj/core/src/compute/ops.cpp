// Copyright 2026 The ssum-transfer Authors.
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

#include "ssum/compute/ops.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "kernels.hpp"
#include "ssum/common/error.hpp"

namespace ssum::compute {

namespace {

Tape& tape_of(Var v, const char* op) {
  if (!v.valid()) throw ArgumentError(std::string(op) + ": empty operand");
  return *v.tape();
}

void require_rank(const Tensor& t, std::size_t rank, const char* op) {
  if (t.rank() != rank) {
    throw ShapeError(std::string(op) + ": expected rank " + std::to_string(rank) + ", got " +
                     shape_string(t.shape()));
  }
}

void require_same_shape(const Tensor& a, const Tensor& b, const char* op) {
  if (a.shape() != b.shape()) {
    throw ShapeError(std::string(op) + ": shape mismatch " + shape_string(a.shape()) + " vs " +
                     shape_string(b.shape()));
  }
}

void accumulate(Tape& t, std::size_t id, const Tensor& g) {
  if (double* dst = t.grad(id)) {
    for (std::size_t i = 0; i < g.size(); ++i) dst[i] += g[i];
  }
}

double sigmoid_scalar(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// Element-wise unary op with derivative expressed through input x and output y.
template <typename Fwd, typename Deriv>
Var unary(Var x, const char* op, Fwd fwd, Deriv deriv) {
  Tape& t = tape_of(x, op);
  const Tensor& xv = x.value();
  Tensor out(xv.shape());
  for (std::size_t i = 0; i < xv.size(); ++i) out[i] = fwd(xv[i]);
  const std::size_t xi = x.id();
  return t.record(op, std::move(out), {x}, [xi, deriv](Tape& tp, const Tensor& g) {
    double* dx = tp.grad(xi);
    if (!dx) return;
    const Tensor& xv = tp.value(xi);
    for (std::size_t i = 0; i < g.size(); ++i) dx[i] += g[i] * deriv(xv[i]);
  });
}

struct AxisLayout {
  std::size_t outer = 1, length = 1, inner = 1;
};

AxisLayout axis_layout(const Shape& shape, int axis, const char* op) {
  const int rank = static_cast<int>(shape.size());
  const int a = axis < 0 ? axis + rank : axis;
  if (a < 0 || a >= rank) {
    throw ShapeError(std::string(op) + ": axis " + std::to_string(axis) + " invalid for " +
                     shape_string(shape));
  }
  AxisLayout l;
  for (int i = 0; i < a; ++i) l.outer *= shape[static_cast<std::size_t>(i)];
  l.length = shape[static_cast<std::size_t>(a)];
  for (int i = a + 1; i < rank; ++i) l.inner *= shape[static_cast<std::size_t>(i)];
  if (l.length == 0) throw ShapeError(std::string(op) + ": empty axis");
  return l;
}

}  // namespace

Var matmul(Var a, Var b) {
  Tape& t = tape_of(a, "matmul");
  const Tensor& av = a.value();
  const Tensor& bv = b.value();
  require_rank(av, 2, "matmul");
  require_rank(bv, 2, "matmul");
  const std::size_t m = av.dim(0), k = av.dim(1), n = bv.dim(1);
  if (bv.dim(0) != k) {
    throw ShapeError("matmul: inner extents differ, " + shape_string(av.shape()) + " * " +
                     shape_string(bv.shape()));
  }
  Tensor out(Shape{m, n});
  kernels::gemm_nn(av.data(), bv.data(), out.data(), m, k, n);
  const std::size_t ai = a.id(), bi = b.id();
  return t.record("matmul", std::move(out), {a, b}, [ai, bi, m, k, n](Tape& tp, const Tensor& g) {
    if (double* da = tp.grad(ai)) kernels::gemm_nt(g.data(), tp.value(bi).data(), da, m, n, k);
    if (double* db = tp.grad(bi)) kernels::gemm_tn(tp.value(ai).data(), g.data(), db, m, k, n);
  });
}

Var linear(Var x, Var weight, Var bias) {
  Tape& t = tape_of(x, "linear");
  const Tensor& xv = x.value();
  const Tensor& wv = weight.value();
  const Tensor& bv = bias.value();
  require_rank(xv, 2, "linear");
  require_rank(wv, 2, "linear");
  const std::size_t m = xv.dim(0), k = xv.dim(1), n = wv.dim(1);
  if (wv.dim(0) != k || bv.size() != n) {
    throw ShapeError("linear: input " + shape_string(xv.shape()) + ", weight " +
                     shape_string(wv.shape()) + ", bias " + shape_string(bv.shape()));
  }
  Tensor out(Shape{m, n});
  for (std::size_t i = 0; i < m; ++i) std::copy(bv.data(), bv.data() + n, out.data() + i * n);
  kernels::gemm_nn(xv.data(), wv.data(), out.data(), m, k, n);
  const std::size_t xi = x.id(), wi = weight.id(), bi = bias.id();
  return t.record("linear", std::move(out), {x, weight, bias},
                  [xi, wi, bi, m, k, n](Tape& tp, const Tensor& g) {
                    if (double* dx = tp.grad(xi)) {
                      kernels::gemm_nt(g.data(), tp.value(wi).data(), dx, m, n, k);
                    }
                    if (double* dw = tp.grad(wi)) {
                      kernels::gemm_tn(tp.value(xi).data(), g.data(), dw, m, k, n);
                    }
                    if (double* db = tp.grad(bi)) {
                      for (std::size_t i = 0; i < m; ++i) {
                        for (std::size_t j = 0; j < n; ++j) db[j] += g[i * n + j];
                      }
                    }
                  });
}

Var transpose(Var a) {
  Tape& t = tape_of(a, "transpose");
  const Tensor& av = a.value();
  require_rank(av, 2, "transpose");
  const std::size_t m = av.dim(0), n = av.dim(1);
  Tensor out(Shape{n, m});
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[j * m + i] = av[i * n + j];
  }
  const std::size_t ai = a.id();
  return t.record("transpose", std::move(out), {a}, [ai, m, n](Tape& tp, const Tensor& g) {
    if (double* da = tp.grad(ai)) {
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) da[i * n + j] += g[j * m + i];
      }
    }
  });
}

Var add(Var a, Var b) {
  Tape& t = tape_of(a, "add");
  require_same_shape(a.value(), b.value(), "add");
  Tensor out = a.value();
  const Tensor& bv = b.value();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += bv[i];
  const std::size_t ai = a.id(), bi = b.id();
  return t.record("add", std::move(out), {a, b}, [ai, bi](Tape& tp, const Tensor& g) {
    accumulate(tp, ai, g);
    accumulate(tp, bi, g);
  });
}

Var sub(Var a, Var b) {
  Tape& t = tape_of(a, "sub");
  require_same_shape(a.value(), b.value(), "sub");
  Tensor out = a.value();
  const Tensor& bv = b.value();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= bv[i];
  const std::size_t ai = a.id(), bi = b.id();
  return t.record("sub", std::move(out), {a, b}, [ai, bi](Tape& tp, const Tensor& g) {
    accumulate(tp, ai, g);
    if (double* db = tp.grad(bi)) {
      for (std::size_t i = 0; i < g.size(); ++i) db[i] -= g[i];
    }
  });
}

Var mul(Var a, Var b) {
  Tape& t = tape_of(a, "mul");
  require_same_shape(a.value(), b.value(), "mul");
  Tensor out = a.value();
  const Tensor& bv = b.value();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= bv[i];
  const std::size_t ai = a.id(), bi = b.id();
  return t.record("mul", std::move(out), {a, b}, [ai, bi](Tape& tp, const Tensor& g) {
    if (double* da = tp.grad(ai)) {
      const Tensor& bv = tp.value(bi);
      for (std::size_t i = 0; i < g.size(); ++i) da[i] += g[i] * bv[i];
    }
    if (double* db = tp.grad(bi)) {
      const Tensor& av = tp.value(ai);
      for (std::size_t i = 0; i < g.size(); ++i) db[i] += g[i] * av[i];
    }
  });
}

Var scale(Var a, double factor) {
  Tape& t = tape_of(a, "scale");
  Tensor out = a.value();
  for (double& v : out.values()) v *= factor;
  const std::size_t ai = a.id();
  return t.record("scale", std::move(out), {a}, [ai, factor](Tape& tp, const Tensor& g) {
    if (double* da = tp.grad(ai)) {
      for (std::size_t i = 0; i < g.size(); ++i) da[i] += g[i] * factor;
    }
  });
}

Var add_bias(Var x, Var bias) {
  Tape& t = tape_of(x, "add_bias");
  const Tensor& xv = x.value();
  const Tensor& bv = bias.value();
  require_rank(xv, 2, "add_bias");
  const std::size_t m = xv.dim(0), n = xv.dim(1);
  if (bv.size() != n) {
    throw ShapeError("add_bias: bias " + shape_string(bv.shape()) + " for rows of " +
                     shape_string(xv.shape()));
  }
  Tensor out = xv;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[i * n + j] += bv[j];
  }
  const std::size_t xi = x.id(), bi = bias.id();
  return t.record("add_bias", std::move(out), {x, bias}, [xi, bi, m, n](Tape& tp, const Tensor& g) {
    accumulate(tp, xi, g);
    if (double* db = tp.grad(bi)) {
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) db[j] += g[i * n + j];
      }
    }
  });
}

Var relu(Var x) {
  return unary(x, "relu", [](double v) { return v > 0 ? v : 0.0; },
               [](double v) { return v > 0 ? 1.0 : 0.0; });
}

Var sigmoid(Var x) {
  return unary(x, "sigmoid", sigmoid_scalar, [](double v) {
    const double s = sigmoid_scalar(v);
    return s * (1.0 - s);
  });
}

Var gelu(Var x) {
  return unary(
      x, "gelu", [](double v) { return 0.5 * v * (1.0 + std::erf(v / std::numbers::sqrt2)); },
      [](double v) {
        const double cdf = 0.5 * (1.0 + std::erf(v / std::numbers::sqrt2));
        const double pdf = std::exp(-0.5 * v * v) * 0.5 * std::numbers::inv_sqrtpi * std::numbers::sqrt2;
        return cdf + v * pdf;
      });
}

Var swish(Var x) {
  return unary(x, "swish", [](double v) { return v * sigmoid_scalar(v); },
               [](double v) {
                 const double s = sigmoid_scalar(v);
                 return s + v * s * (1.0 - s);
               });
}

Var glu(Var x) {
  Tape& t = tape_of(x, "glu");
  const Tensor& xv = x.value();
  require_rank(xv, 2, "glu");
  const std::size_t m = xv.dim(0), width = xv.dim(1);
  if (width % 2 != 0) throw ShapeError("glu: odd column count " + shape_string(xv.shape()));
  const std::size_t n = width / 2;
  Tensor out(Shape{m, n});
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out[i * n + j] = xv[i * width + j] * sigmoid_scalar(xv[i * width + n + j]);
    }
  }
  const std::size_t xi = x.id();
  return t.record("glu", std::move(out), {x}, [xi, m, n, width](Tape& tp, const Tensor& g) {
    double* dx = tp.grad(xi);
    if (!dx) return;
    const Tensor& xv = tp.value(xi);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double a = xv[i * width + j];
        const double s = sigmoid_scalar(xv[i * width + n + j]);
        const double gij = g[i * n + j];
        dx[i * width + j] += gij * s;
        dx[i * width + n + j] += gij * a * s * (1.0 - s);
      }
    }
  });
}

Var softmax(Var x, int axis) {
  Tape& t = tape_of(x, "softmax");
  const Tensor& xv = x.value();
  const AxisLayout l = axis_layout(xv.shape(), axis, "softmax");
  Tensor out(xv.shape());
  for (std::size_t o = 0; o < l.outer; ++o) {
    for (std::size_t in = 0; in < l.inner; ++in) {
      const std::size_t base = o * l.length * l.inner + in;
      double mx = xv[base];
      for (std::size_t k = 1; k < l.length; ++k) mx = std::max(mx, xv[base + k * l.inner]);
      double total = 0.0;
      for (std::size_t k = 0; k < l.length; ++k) {
        const double e = std::exp(xv[base + k * l.inner] - mx);
        out[base + k * l.inner] = e;
        total += e;
      }
      for (std::size_t k = 0; k < l.length; ++k) out[base + k * l.inner] /= total;
    }
  }
  const std::size_t xi = x.id();
  const std::size_t self = t.size();
  return t.record("softmax", std::move(out), {x}, [xi, self, l](Tape& tp, const Tensor& g) {
    double* dx = tp.grad(xi);
    if (!dx) return;
    const Tensor& y = tp.value(self);
    for (std::size_t o = 0; o < l.outer; ++o) {
      for (std::size_t in = 0; in < l.inner; ++in) {
        const std::size_t base = o * l.length * l.inner + in;
        double dot = 0.0;
        for (std::size_t k = 0; k < l.length; ++k) {
          dot += g[base + k * l.inner] * y[base + k * l.inner];
        }
        for (std::size_t k = 0; k < l.length; ++k) {
          const std::size_t idx = base + k * l.inner;
          dx[idx] += y[idx] * (g[idx] - dot);
        }
      }
    }
  });
}

Var log_softmax(Var x, int axis) {
  Tape& t = tape_of(x, "log_softmax");
  const Tensor& xv = x.value();
  const AxisLayout l = axis_layout(xv.shape(), axis, "log_softmax");
  Tensor out(xv.shape());
  for (std::size_t o = 0; o < l.outer; ++o) {
    for (std::size_t in = 0; in < l.inner; ++in) {
      const std::size_t base = o * l.length * l.inner + in;
      double mx = xv[base];
      for (std::size_t k = 1; k < l.length; ++k) mx = std::max(mx, xv[base + k * l.inner]);
      double total = 0.0;
      for (std::size_t k = 0; k < l.length; ++k) total += std::exp(xv[base + k * l.inner] - mx);
      const double lse = mx + std::log(total);
      for (std::size_t k = 0; k < l.length; ++k) {
        out[base + k * l.inner] = xv[base + k * l.inner] - lse;
      }
    }
  }
  const std::size_t xi = x.id();
  const std::size_t self = t.size();
  return t.record("log_softmax", std::move(out), {x}, [xi, self, l](Tape& tp, const Tensor& g) {
    double* dx = tp.grad(xi);
    if (!dx) return;
    const Tensor& y = tp.value(self);
    for (std::size_t o = 0; o < l.outer; ++o) {
      for (std::size_t in = 0; in < l.inner; ++in) {
        const std::size_t base = o * l.length * l.inner + in;
        double total = 0.0;
        for (std::size_t k = 0; k < l.length; ++k) total += g[base + k * l.inner];
        for (std::size_t k = 0; k < l.length; ++k) {
          const std::size_t idx = base + k * l.inner;
          dx[idx] += g[idx] - std::exp(y[idx]) * total;
        }
      }
    }
  });
}

Var layer_norm(Var x, Var gain, Var bias, double epsilon) {
  Tape& t = tape_of(x, "layer_norm");
  const Tensor& xv = x.value();
  if (xv.rank() == 0 || xv.cols() == 0) throw ShapeError("layer_norm: empty normalised axis");
  const std::size_t m = xv.rows(), n = xv.cols();
  if (gain.value().size() != n || bias.value().size() != n) {
    throw ShapeError("layer_norm: gain/bias must have length " + std::to_string(n));
  }
  const Tensor& gv = gain.value();
  const Tensor& bv = bias.value();
  Tensor out(xv.shape());
  std::vector<double> normalized(xv.size());
  std::vector<double> inv_std(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double* row = xv.data() + i * n;
    double mu = 0.0;
    for (std::size_t j = 0; j < n; ++j) mu += row[j];
    mu /= static_cast<double>(n);
    double var = 0.0;
    for (std::size_t j = 0; j < n; ++j) var += (row[j] - mu) * (row[j] - mu);
    var /= static_cast<double>(n);
    const double inv = 1.0 / std::sqrt(var + epsilon);
    inv_std[i] = inv;
    for (std::size_t j = 0; j < n; ++j) {
      const double h = (row[j] - mu) * inv;
      normalized[i * n + j] = h;
      out[i * n + j] = gv[j] * h + bv[j];
    }
  }
  const std::size_t xi = x.id(), gi = gain.id(), bi = bias.id();
  return t.record(
      "layer_norm", std::move(out), {x, gain, bias},
      [xi, gi, bi, m, n, normalized = std::move(normalized), inv_std = std::move(inv_std)](
          Tape& tp, const Tensor& g) {
        if (double* dg = tp.grad(gi)) {
          for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < n; ++j) dg[j] += g[i * n + j] * normalized[i * n + j];
          }
        }
        if (double* db = tp.grad(bi)) {
          for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < n; ++j) db[j] += g[i * n + j];
          }
        }
        if (double* dx = tp.grad(xi)) {
          const Tensor& gv = tp.value(gi);
          const double inv_n = 1.0 / static_cast<double>(n);
          for (std::size_t i = 0; i < m; ++i) {
            double mean_d = 0.0, mean_dh = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
              const double d = g[i * n + j] * gv[j];
              mean_d += d;
              mean_dh += d * normalized[i * n + j];
            }
            mean_d *= inv_n;
            mean_dh *= inv_n;
            for (std::size_t j = 0; j < n; ++j) {
              const double d = g[i * n + j] * gv[j];
              dx[i * n + j] += inv_std[i] * (d - mean_d - normalized[i * n + j] * mean_dh);
            }
          }
        }
      });
}

Var embedding(Var table, std::span<const int> ids) {
  Tape& t = tape_of(table, "embedding");
  const Tensor& tv = table.value();
  require_rank(tv, 2, "embedding");
  const std::size_t vocab = tv.dim(0), d = tv.dim(1);
  std::vector<std::size_t> rows;
  rows.reserve(ids.size());
  for (int id : ids) {
    if (id < 0 || static_cast<std::size_t>(id) >= vocab) {
      throw ArgumentError("embedding: id " + std::to_string(id) + " outside table of " +
                          std::to_string(vocab) + " rows");
    }
    rows.push_back(static_cast<std::size_t>(id));
  }
  Tensor out(Shape{rows.size(), d});
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::copy(tv.data() + rows[i] * d, tv.data() + (rows[i] + 1) * d, out.data() + i * d);
  }
  const std::size_t ti = table.id();
  return t.record("embedding", std::move(out), {table},
                  [ti, d, rows = std::move(rows)](Tape& tp, const Tensor& g) {
                    double* dt = tp.grad(ti);
                    if (!dt) return;
                    for (std::size_t i = 0; i < rows.size(); ++i) {
                      for (std::size_t j = 0; j < d; ++j) dt[rows[i] * d + j] += g[i * d + j];
                    }
                  });
}

Var slice_rows(Var x, std::size_t begin, std::size_t count) {
  Tape& t = tape_of(x, "slice_rows");
  const Tensor& xv = x.value();
  require_rank(xv, 2, "slice_rows");
  const std::size_t m = xv.dim(0), n = xv.dim(1);
  if (begin + count > m) {
    throw ShapeError("slice_rows: [" + std::to_string(begin) + ", " + std::to_string(begin + count) +
                     ") outside " + shape_string(xv.shape()));
  }
  Tensor out(Shape{count, n});
  std::copy(xv.data() + begin * n, xv.data() + (begin + count) * n, out.data());
  const std::size_t xi = x.id();
  return t.record("slice_rows", std::move(out), {x}, [xi, begin, n](Tape& tp, const Tensor& g) {
    if (double* dx = tp.grad(xi)) {
      for (std::size_t i = 0; i < g.size(); ++i) dx[begin * n + i] += g[i];
    }
  });
}

Var slice_cols(Var x, std::size_t begin, std::size_t count) {
  Tape& t = tape_of(x, "slice_cols");
  const Tensor& xv = x.value();
  require_rank(xv, 2, "slice_cols");
  const std::size_t m = xv.dim(0), n = xv.dim(1);
  if (begin + count > n) {
    throw ShapeError("slice_cols: [" + std::to_string(begin) + ", " + std::to_string(begin + count) +
                     ") outside " + shape_string(xv.shape()));
  }
  Tensor out(Shape{m, count});
  for (std::size_t i = 0; i < m; ++i) {
    std::copy(xv.data() + i * n + begin, xv.data() + i * n + begin + count, out.data() + i * count);
  }
  const std::size_t xi = x.id();
  return t.record("slice_cols", std::move(out), {x},
                  [xi, begin, count, m, n](Tape& tp, const Tensor& g) {
                    if (double* dx = tp.grad(xi)) {
                      for (std::size_t i = 0; i < m; ++i) {
                        for (std::size_t j = 0; j < count; ++j) dx[i * n + begin + j] += g[i * count + j];
                      }
                    }
                  });
}

Var concat_cols(const std::vector<Var>& parts) {
  if (parts.empty()) throw ArgumentError("concat_cols: no operands");
  Tape& t = tape_of(parts.front(), "concat_cols");
  const std::size_t m = parts.front().value().dim(0);
  std::vector<std::size_t> widths;
  std::size_t total = 0;
  for (const Var& p : parts) {
    require_rank(p.value(), 2, "concat_cols");
    if (p.value().dim(0) != m) throw ShapeError("concat_cols: row counts differ");
    widths.push_back(p.value().dim(1));
    total += widths.back();
  }
  Tensor out(Shape{m, total});
  std::size_t offset = 0;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const Tensor& pv = parts[k].value();
    for (std::size_t i = 0; i < m; ++i) {
      std::copy(pv.data() + i * widths[k], pv.data() + (i + 1) * widths[k],
                out.data() + i * total + offset);
    }
    offset += widths[k];
  }
  std::vector<std::size_t> ids;
  for (const Var& p : parts) ids.push_back(p.id());
  return t.record("concat_cols", std::move(out), parts,
                  [ids = std::move(ids), widths = std::move(widths), m, total](Tape& tp,
                                                                                const Tensor& g) {
                    std::size_t offset = 0;
                    for (std::size_t k = 0; k < ids.size(); ++k) {
                      if (double* dp = tp.grad(ids[k])) {
                        for (std::size_t i = 0; i < m; ++i) {
                          for (std::size_t j = 0; j < widths[k]; ++j) {
                            dp[i * widths[k] + j] += g[i * total + offset + j];
                          }
                        }
                      }
                      offset += widths[k];
                    }
                  });
}

Var reshape(Var x, Shape shape) {
  Tape& t = tape_of(x, "reshape");
  Tensor out = x.value().reshaped(std::move(shape));
  const std::size_t xi = x.id();
  return t.record("reshape", std::move(out), {x},
                  [xi](Tape& tp, const Tensor& g) { accumulate(tp, xi, g); });
}

Var sum(Var x) {
  Tape& t = tape_of(x, "sum");
  double total = 0.0;
  for (double v : x.value().values()) total += v;
  const std::size_t xi = x.id();
  return t.record("sum", Tensor::scalar(total), {x}, [xi](Tape& tp, const Tensor& g) {
    if (double* dx = tp.grad(xi)) {
      const std::size_t n = tp.value(xi).size();
      for (std::size_t i = 0; i < n; ++i) dx[i] += g[0];
    }
  });
}

Var mean(Var x) {
  const std::size_t n = x.value().size();
  if (n == 0) throw ShapeError("mean of empty tensor");
  return scale(sum(x), 1.0 / static_cast<double>(n));
}

}  // namespace ssum::compute
