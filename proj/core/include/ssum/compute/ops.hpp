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

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ssum/compute/tape.hpp"

namespace ssum::compute {

// Differentiable primitives. Unless stated otherwise operands are 2-D
// (rows x cols) and results land on the tape of the first operand.

/// a (m x k) times b (k x n).
Var matmul(Var a, Var b);
/// x (m x k) times w (k x n) plus bias (n): one node instead of two.
Var linear(Var x, Var weight, Var bias);
Var transpose(Var a);

Var add(Var a, Var b);
Var sub(Var a, Var b);
/// Element-wise product.
Var mul(Var a, Var b);
Var scale(Var a, double factor);
/// Adds a length-n bias to every row of an m x n operand.
Var add_bias(Var x, Var bias);

Var relu(Var x);
Var sigmoid(Var x);
/// Exact GELU, x * Phi(x).
Var gelu(Var x);
/// x * sigmoid(x).
Var swish(Var x);
/// Gated linear unit over columns: left half times sigmoid(right half).
Var glu(Var x);

/// Softmax along `axis` (negative counts from the back).
Var softmax(Var x, int axis = -1);
Var log_softmax(Var x, int axis = -1);

inline constexpr double kLayerNormEpsilon = 1e-5;

/// Normalises each row to zero mean and unit variance, then applies
/// gain * x + bias. Both gain and bias have the row length.
Var layer_norm(Var x, Var gain, Var bias, double epsilon = kLayerNormEpsilon);

/// Gathers rows of `table` (V x d) for each id.
Var embedding(Var table, std::span<const int> ids);

Var slice_rows(Var x, std::size_t begin, std::size_t count);
Var slice_cols(Var x, std::size_t begin, std::size_t count);
Var concat_cols(const std::vector<Var>& parts);
Var reshape(Var x, Shape shape);

Var sum(Var x);
Var mean(Var x);

/// Output length of a strided, zero-padded window.
std::size_t conv_output_length(std::size_t input, std::size_t kernel, std::size_t stride,
                               std::size_t padding);

/// x: T x C_in (time major), kernel: C_out x C_in x K, bias: C_out.
Var conv1d(Var x, Var kernel, Var bias, std::size_t stride, std::size_t padding);

/// Per-channel convolution. x: T x C, kernel: C x K, bias: C.
Var depthwise_conv1d(Var x, Var kernel, Var bias, std::size_t padding);

/// x: C_in x H x W, kernel: C_out x C_in x K x K, bias: C_out. The same
/// stride and padding apply to both spatial axes.
Var conv2d(Var x, Var kernel, Var bias, std::size_t stride, std::size_t padding);

/// C x H x W -> H x (C * W), the layout a sub-sampling front end feeds to
/// its output projection.
Var flatten_channels(Var x);

struct AttentionOptions {
  std::size_t heads = 1;
  /// Query i may only see keys j <= i.
  bool causal = false;
  /// Optional learned table of (2 * clip + 1) x head_dim relative position
  /// embeddings, shared by all heads. Requires self-attention (Tq == Tk).
  Var relative_table{};
  std::size_t relative_clip = 0;
};

/// Multi-head scaled dot-product attention over already projected inputs.
/// q: Tq x d, k and v: Tk x d, d divisible by heads. For head h,
///   score(i, j) = (q_i . k_j + q_i . R[clip(j - i)]) / sqrt(d / heads)
/// where the relative term is present only when a table is supplied.
Var attention(Var q, Var k, Var v, const AttentionOptions& options);

}  // namespace ssum::compute
