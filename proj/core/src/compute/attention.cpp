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

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "ssum/common/error.hpp"
#include "ssum/compute/ops.hpp"

namespace ssum::compute {

namespace {

std::size_t relative_index(std::size_t i, std::size_t j, std::size_t clip) {
  const auto diff = static_cast<std::ptrdiff_t>(j) - static_cast<std::ptrdiff_t>(i);
  const auto c = static_cast<std::ptrdiff_t>(clip);
  return static_cast<std::size_t>(std::clamp(diff, -c, c) + c);
}

}  // namespace

Var attention(Var q, Var k, Var v, const AttentionOptions& options) {
  if (!q.valid()) throw ArgumentError("attention: empty operand");
  Tape& t = *q.tape();
  const Tensor& qv = q.value();
  const Tensor& kv = k.value();
  const Tensor& vv = v.value();
  if (qv.rank() != 2 || kv.rank() != 2 || vv.rank() != 2) {
    throw ShapeError("attention: operands must be 2-D");
  }
  const std::size_t tq = qv.dim(0), tk = kv.dim(0), d = qv.dim(1);
  if (kv.dim(1) != d || vv.dim(1) != d || vv.dim(0) != tk) {
    throw ShapeError("attention: q " + shape_string(qv.shape()) + ", k " +
                     shape_string(kv.shape()) + ", v " + shape_string(vv.shape()));
  }
  const std::size_t heads = options.heads;
  if (heads == 0 || d % heads != 0) {
    throw ShapeError("attention: width " + std::to_string(d) + " not divisible by " +
                     std::to_string(heads) + " heads");
  }
  if (tk == 0) throw ShapeError("attention: no keys");
  const std::size_t dh = d / heads;
  const bool causal = options.causal;
  const bool relative = options.relative_table.valid();
  const std::size_t clip = options.relative_clip;
  if ((causal || relative) && tq != tk) {
    throw ShapeError("attention: causal/relative attention needs equal query and key lengths");
  }
  if (relative) {
    const Tensor& rv = options.relative_table.value();
    if (rv.rank() != 2 || rv.dim(0) != 2 * clip + 1 || rv.dim(1) != dh) {
      throw ShapeError("attention: relative table " + shape_string(rv.shape()) + " expected [" +
                       std::to_string(2 * clip + 1) + "x" + std::to_string(dh) + "]");
    }
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(dh));
  const double* rt = relative ? options.relative_table.value().data() : nullptr;

  std::vector<double> probs(heads * tq * tk, 0.0);
  Tensor out(Shape{tq, d});
  std::vector<double> row(tk);
  for (std::size_t h = 0; h < heads; ++h) {
    const std::size_t off = h * dh;
    for (std::size_t i = 0; i < tq; ++i) {
      const double* qi = qv.data() + i * d + off;
      const std::size_t limit = causal ? i + 1 : tk;
      double mx = -std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < limit; ++j) {
        const double* kj = kv.data() + j * d + off;
        double s = 0.0;
        for (std::size_t c = 0; c < dh; ++c) s += qi[c] * kj[c];
        if (rt) {
          const double* r = rt + relative_index(i, j, clip) * dh;
          for (std::size_t c = 0; c < dh; ++c) s += qi[c] * r[c];
        }
        row[j] = s * scale;
        mx = std::max(mx, row[j]);
      }
      double total = 0.0;
      for (std::size_t j = 0; j < limit; ++j) {
        row[j] = std::exp(row[j] - mx);
        total += row[j];
      }
      double* p = probs.data() + (h * tq + i) * tk;
      double* oi = out.data() + i * d + off;
      for (std::size_t j = 0; j < limit; ++j) {
        p[j] = row[j] / total;
        const double* vj = vv.data() + j * d + off;
        for (std::size_t c = 0; c < dh; ++c) oi[c] += p[j] * vj[c];
      }
    }
  }

  std::vector<Var> inputs{q, k, v};
  if (relative) inputs.push_back(options.relative_table);
  const std::size_t qi_id = q.id(), ki_id = k.id(), vi_id = v.id();
  const std::size_t ri_id = relative ? options.relative_table.id() : 0;
  return t.record(
      "attention", std::move(out), inputs,
      [=, probs = std::move(probs)](Tape& tp, const Tensor& g) {
        double* dq = tp.grad(qi_id);
        double* dk = tp.grad(ki_id);
        double* dv = tp.grad(vi_id);
        double* dr = relative ? tp.grad(ri_id) : nullptr;
        const Tensor& qv = tp.value(qi_id);
        const Tensor& kv = tp.value(ki_id);
        const Tensor& vv = tp.value(vi_id);
        const double* rt = relative ? tp.value(ri_id).data() : nullptr;
        std::vector<double> ds(tk);
        for (std::size_t h = 0; h < heads; ++h) {
          const std::size_t off = h * dh;
          for (std::size_t i = 0; i < tq; ++i) {
            const std::size_t limit = causal ? i + 1 : tk;
            const double* p = probs.data() + (h * tq + i) * tk;
            const double* gi = g.data() + i * d + off;
            double dot = 0.0;
            for (std::size_t j = 0; j < limit; ++j) {
              const double* vj = vv.data() + j * d + off;
              double dp = 0.0;
              for (std::size_t c = 0; c < dh; ++c) dp += gi[c] * vj[c];
              ds[j] = dp;
              dot += p[j] * dp;
              if (dv) {
                double* dvj = dv + j * d + off;
                for (std::size_t c = 0; c < dh; ++c) dvj[c] += p[j] * gi[c];
              }
            }
            const double* qrow = qv.data() + i * d + off;
            for (std::size_t j = 0; j < limit; ++j) {
              const double s = p[j] * (ds[j] - dot) * scale;
              if (s == 0.0) continue;
              const double* kj = kv.data() + j * d + off;
              if (dq) {
                double* dqi = dq + i * d + off;
                for (std::size_t c = 0; c < dh; ++c) dqi[c] += s * kj[c];
                if (rt) {
                  const double* r = rt + relative_index(i, j, clip) * dh;
                  for (std::size_t c = 0; c < dh; ++c) dqi[c] += s * r[c];
                }
              }
              if (dk) {
                double* dkj = dk + j * d + off;
                for (std::size_t c = 0; c < dh; ++c) dkj[c] += s * qrow[c];
              }
              if (dr) {
                double* drow = dr + relative_index(i, j, clip) * dh;
                for (std::size_t c = 0; c < dh; ++c) drow[c] += s * qrow[c];
              }
            }
          }
        }
      });
}

}  // namespace ssum::compute
