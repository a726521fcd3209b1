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

#include <string>

#include "ssum/common/error.hpp"
#include "ssum/compute/ops.hpp"

namespace ssum::compute {

namespace {

Tape& tape_of(Var v, const char* op) {
  if (!v.valid()) throw ArgumentError(std::string(op) + ": empty operand");
  return *v.tape();
}

}  // namespace

std::size_t conv_output_length(std::size_t input, std::size_t kernel, std::size_t stride,
                               std::size_t padding) {
  if (stride == 0) throw ArgumentError("convolution stride must be positive");
  if (kernel == 0 || kernel > input + 2 * padding) {
    throw ShapeError("kernel of " + std::to_string(kernel) + " does not fit input of " +
                     std::to_string(input) + " with padding " + std::to_string(padding));
  }
  return (input + 2 * padding - kernel) / stride + 1;
}

Var conv1d(Var x, Var kernel, Var bias, std::size_t stride, std::size_t padding) {
  Tape& t = tape_of(x, "conv1d");
  const Tensor& xv = x.value();
  const Tensor& wv = kernel.value();
  const Tensor& bv = bias.value();
  if (xv.rank() != 2 || wv.rank() != 3) {
    throw ShapeError("conv1d: expects T x C input and C_out x C_in x K kernel, got " +
                     shape_string(xv.shape()) + " and " + shape_string(wv.shape()));
  }
  const std::size_t len = xv.dim(0), cin = xv.dim(1);
  const std::size_t cout = wv.dim(0), k = wv.dim(2);
  if (wv.dim(1) != cin || bv.size() != cout) {
    throw ShapeError("conv1d: kernel " + shape_string(wv.shape()) + " / bias " +
                     shape_string(bv.shape()) + " incompatible with input " +
                     shape_string(xv.shape()));
  }
  const std::size_t out_len = conv_output_length(len, k, stride, padding);
  Tensor out(Shape{out_len, cout});
  for (std::size_t tpos = 0; tpos < out_len; ++tpos) {
    for (std::size_t o = 0; o < cout; ++o) {
      double acc = bv[o];
      for (std::size_t kk = 0; kk < k; ++kk) {
        const std::ptrdiff_t src = static_cast<std::ptrdiff_t>(tpos * stride + kk) -
                                   static_cast<std::ptrdiff_t>(padding);
        if (src < 0 || static_cast<std::size_t>(src) >= len) continue;
        const double* xrow = xv.data() + static_cast<std::size_t>(src) * cin;
        for (std::size_t c = 0; c < cin; ++c) acc += xrow[c] * wv[(o * cin + c) * k + kk];
      }
      out[tpos * cout + o] = acc;
    }
  }
  const std::size_t xi = x.id(), wi = kernel.id(), bi = bias.id();
  return t.record("conv1d", std::move(out), {x, kernel, bias},
                  [=](Tape& tp, const Tensor& g) {
                    double* dx = tp.grad(xi);
                    double* dw = tp.grad(wi);
                    double* db = tp.grad(bi);
                    const Tensor& xv = tp.value(xi);
                    const Tensor& wv = tp.value(wi);
                    for (std::size_t tpos = 0; tpos < out_len; ++tpos) {
                      for (std::size_t o = 0; o < cout; ++o) {
                        const double go = g[tpos * cout + o];
                        if (db) db[o] += go;
                        for (std::size_t kk = 0; kk < k; ++kk) {
                          const std::ptrdiff_t src = static_cast<std::ptrdiff_t>(tpos * stride + kk) -
                                                     static_cast<std::ptrdiff_t>(padding);
                          if (src < 0 || static_cast<std::size_t>(src) >= len) continue;
                          const std::size_t s = static_cast<std::size_t>(src);
                          for (std::size_t c = 0; c < cin; ++c) {
                            const std::size_t widx = (o * cin + c) * k + kk;
                            if (dx) dx[s * cin + c] += go * wv[widx];
                            if (dw) dw[widx] += go * xv[s * cin + c];
                          }
                        }
                      }
                    }
                  });
}

Var depthwise_conv1d(Var x, Var kernel, Var bias, std::size_t padding) {
  Tape& t = tape_of(x, "depthwise_conv1d");
  const Tensor& xv = x.value();
  const Tensor& wv = kernel.value();
  const Tensor& bv = bias.value();
  if (xv.rank() != 2 || wv.rank() != 2) {
    throw ShapeError("depthwise_conv1d: expects T x C input and C x K kernel");
  }
  const std::size_t len = xv.dim(0), ch = xv.dim(1), k = wv.dim(1);
  if (wv.dim(0) != ch || bv.size() != ch) {
    throw ShapeError("depthwise_conv1d: kernel " + shape_string(wv.shape()) +
                     " incompatible with input " + shape_string(xv.shape()));
  }
  const std::size_t out_len = conv_output_length(len, k, 1, padding);
  Tensor out(Shape{out_len, ch});
  for (std::size_t tpos = 0; tpos < out_len; ++tpos) {
    double* orow = out.data() + tpos * ch;
    for (std::size_t c = 0; c < ch; ++c) orow[c] = bv[c];
    for (std::size_t kk = 0; kk < k; ++kk) {
      const std::ptrdiff_t src = static_cast<std::ptrdiff_t>(tpos + kk) -
                                 static_cast<std::ptrdiff_t>(padding);
      if (src < 0 || static_cast<std::size_t>(src) >= len) continue;
      const double* xrow = xv.data() + static_cast<std::size_t>(src) * ch;
      for (std::size_t c = 0; c < ch; ++c) orow[c] += xrow[c] * wv[c * k + kk];
    }
  }
  const std::size_t xi = x.id(), wi = kernel.id(), bi = bias.id();
  return t.record("depthwise_conv1d", std::move(out), {x, kernel, bias},
                  [=](Tape& tp, const Tensor& g) {
                    double* dx = tp.grad(xi);
                    double* dw = tp.grad(wi);
                    double* db = tp.grad(bi);
                    const Tensor& xv = tp.value(xi);
                    const Tensor& wv = tp.value(wi);
                    for (std::size_t tpos = 0; tpos < out_len; ++tpos) {
                      const double* grow = g.data() + tpos * ch;
                      if (db) {
                        for (std::size_t c = 0; c < ch; ++c) db[c] += grow[c];
                      }
                      for (std::size_t kk = 0; kk < k; ++kk) {
                        const std::ptrdiff_t src = static_cast<std::ptrdiff_t>(tpos + kk) -
                                                   static_cast<std::ptrdiff_t>(padding);
                        if (src < 0 || static_cast<std::size_t>(src) >= len) continue;
                        const std::size_t s = static_cast<std::size_t>(src);
                        for (std::size_t c = 0; c < ch; ++c) {
                          if (dx) dx[s * ch + c] += grow[c] * wv[c * k + kk];
                          if (dw) dw[c * k + kk] += grow[c] * xv[s * ch + c];
                        }
                      }
                    }
                  });
}

Var conv2d(Var x, Var kernel, Var bias, std::size_t stride, std::size_t padding) {
  Tape& t = tape_of(x, "conv2d");
  const Tensor& xv = x.value();
  const Tensor& wv = kernel.value();
  const Tensor& bv = bias.value();
  if (xv.rank() != 3 || wv.rank() != 4) {
    throw ShapeError("conv2d: expects C x H x W input and C_out x C_in x K x K kernel, got " +
                     shape_string(xv.shape()) + " and " + shape_string(wv.shape()));
  }
  const std::size_t cin = xv.dim(0), h = xv.dim(1), w = xv.dim(2);
  const std::size_t cout = wv.dim(0), k = wv.dim(2);
  if (wv.dim(1) != cin || wv.dim(3) != k || bv.size() != cout) {
    throw ShapeError("conv2d: kernel " + shape_string(wv.shape()) + " incompatible with input " +
                     shape_string(xv.shape()));
  }
  const std::size_t oh = conv_output_length(h, k, stride, padding);
  const std::size_t ow = conv_output_length(w, k, stride, padding);
  const auto pad = static_cast<std::ptrdiff_t>(padding);
  Tensor out(Shape{cout, oh, ow});
  for (std::size_t o = 0; o < cout; ++o) {
    for (std::size_t i = 0; i < oh; ++i) {
      for (std::size_t j = 0; j < ow; ++j) {
        double acc = bv[o];
        for (std::size_t c = 0; c < cin; ++c) {
          for (std::size_t u = 0; u < k; ++u) {
            const std::ptrdiff_t r = static_cast<std::ptrdiff_t>(i * stride + u) - pad;
            if (r < 0 || static_cast<std::size_t>(r) >= h) continue;
            for (std::size_t v = 0; v < k; ++v) {
              const std::ptrdiff_t col = static_cast<std::ptrdiff_t>(j * stride + v) - pad;
              if (col < 0 || static_cast<std::size_t>(col) >= w) continue;
              acc += xv[(c * h + static_cast<std::size_t>(r)) * w + static_cast<std::size_t>(col)] *
                     wv[((o * cin + c) * k + u) * k + v];
            }
          }
        }
        out[(o * oh + i) * ow + j] = acc;
      }
    }
  }
  const std::size_t xi = x.id(), wi = kernel.id(), bi = bias.id();
  return t.record("conv2d", std::move(out), {x, kernel, bias}, [=](Tape& tp, const Tensor& g) {
    double* dx = tp.grad(xi);
    double* dw = tp.grad(wi);
    double* db = tp.grad(bi);
    const Tensor& xv = tp.value(xi);
    const Tensor& wv = tp.value(wi);
    for (std::size_t o = 0; o < cout; ++o) {
      for (std::size_t i = 0; i < oh; ++i) {
        for (std::size_t j = 0; j < ow; ++j) {
          const double go = g[(o * oh + i) * ow + j];
          if (db) db[o] += go;
          for (std::size_t c = 0; c < cin; ++c) {
            for (std::size_t u = 0; u < k; ++u) {
              const std::ptrdiff_t r = static_cast<std::ptrdiff_t>(i * stride + u) - pad;
              if (r < 0 || static_cast<std::size_t>(r) >= h) continue;
              for (std::size_t v = 0; v < k; ++v) {
                const std::ptrdiff_t col = static_cast<std::ptrdiff_t>(j * stride + v) - pad;
                if (col < 0 || static_cast<std::size_t>(col) >= w) continue;
                const std::size_t xidx =
                    (c * h + static_cast<std::size_t>(r)) * w + static_cast<std::size_t>(col);
                const std::size_t widx = ((o * cin + c) * k + u) * k + v;
                if (dx) dx[xidx] += go * wv[widx];
                if (dw) dw[widx] += go * xv[xidx];
              }
            }
          }
        }
      }
    }
  });
}

Var flatten_channels(Var x) {
  Tape& t = tape_of(x, "flatten_channels");
  const Tensor& xv = x.value();
  if (xv.rank() != 3) throw ShapeError("flatten_channels: expects C x H x W, got " + shape_string(xv.shape()));
  const std::size_t ch = xv.dim(0), h = xv.dim(1), w = xv.dim(2);
  Tensor out(Shape{h, ch * w});
  for (std::size_t c = 0; c < ch; ++c) {
    for (std::size_t i = 0; i < h; ++i) {
      for (std::size_t j = 0; j < w; ++j) out[i * ch * w + c * w + j] = xv[(c * h + i) * w + j];
    }
  }
  const std::size_t xi = x.id();
  return t.record("flatten_channels", std::move(out), {x}, [=](Tape& tp, const Tensor& g) {
    double* dx = tp.grad(xi);
    if (!dx) return;
    for (std::size_t c = 0; c < ch; ++c) {
      for (std::size_t i = 0; i < h; ++i) {
        for (std::size_t j = 0; j < w; ++j) dx[(c * h + i) * w + j] += g[i * ch * w + c * w + j];
      }
    }
  });
}

}  // namespace ssum::compute
