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

#include "ssum/model/seq2seq.hpp"

#include <cmath>
#include <numeric>
#include <optional>

#include "ssum/common/error.hpp"
#include "ssum/common/random.hpp"

namespace ssum::model {

using compute::Tape;
using compute::Var;

namespace detail {

struct LinearIdx {
  std::size_t weight = 0, bias = 0;
};
struct NormIdx {
  std::size_t gain = 0, bias = 0;
};
struct AttentionIdx {
  LinearIdx q, k, v, out;
};
struct FeedForwardIdx {
  LinearIdx in, out;
};
struct ConvModuleIdx {
  LinearIdx pointwise_in;
  std::size_t depthwise_weight = 0, depthwise_bias = 0;
  NormIdx norm;
  LinearIdx pointwise_out;
};
struct ConformerIdx {
  NormIdx ff1_norm;
  FeedForwardIdx ff1;
  NormIdx attn_norm;
  AttentionIdx attn;
  NormIdx conv_norm;
  ConvModuleIdx conv;
  NormIdx ff2_norm;
  FeedForwardIdx ff2;
  NormIdx final_norm;
};
struct TransformerIdx {
  NormIdx attn_norm;
  AttentionIdx attn;
  NormIdx ff_norm;
  FeedForwardIdx ff;
};
struct DecoderLayerIdx {
  NormIdx self_norm;
  AttentionIdx self_attn;
  NormIdx cross_norm;
  AttentionIdx cross_attn;
  NormIdx ff_norm;
  FeedForwardIdx ff;
};
struct SubsampleConvIdx {
  std::size_t weight = 0, bias = 0, stride = 1;
};

struct Architecture {
  // Acoustic front end.
  std::vector<SubsampleConvIdx> subsample;
  LinearIdx subsample_out;
  std::size_t relative_table = 0;
  std::vector<ConformerIdx> conformer;
  // Text front end.
  std::size_t source_embed = 0, source_pos = 0;
  std::vector<TransformerIdx> text_layers;
  NormIdx text_final_norm;
  // Decoder.
  std::size_t embed = 0, pos = 0;
  std::vector<DecoderLayerIdx> decoder;
  NormIdx decoder_final_norm;
  LinearIdx output;
};

}  // namespace detail

namespace {

using detail::Architecture;

enum class Init { xavier, zeros, ones };

double xavier_limit(const Shape& shape) {
  double fan_in = 1, fan_out = 1;
  switch (shape.size()) {
    case 2:  // [in, out] matrices and embedding tables
      fan_in = static_cast<double>(shape[0]);
      fan_out = static_cast<double>(shape[1]);
      break;
    case 3:  // conv1d [out, in, k]
      fan_in = static_cast<double>(shape[1] * shape[2]);
      fan_out = static_cast<double>(shape[0] * shape[2]);
      break;
    case 4:  // conv2d [out, in, k, k]
      fan_in = static_cast<double>(shape[1] * shape[2] * shape[3]);
      fan_out = static_cast<double>(shape[0] * shape[2] * shape[3]);
      break;
    default:
      fan_in = fan_out = static_cast<double>(compute::shape_size(shape));
  }
  return std::sqrt(6.0 / (fan_in + fan_out));
}

class Registrar {
 public:
  Registrar(ParameterSet* params, std::optional<std::uint64_t> seed)
      : params_(params), seed_(seed) {}

  std::size_t add(std::string name, Shape shape, Init init) {
    specs.push_back(ParameterSpec{name, shape});
    const std::size_t index = specs.size() - 1;
    if (params_) {
      Tensor value(shape);
      if (seed_) {
        if (init == Init::ones) {
          value.fill(1.0);
        } else if (init == Init::xavier) {
          Rng rng(derive_seed(*seed_, index));
          const double limit = xavier_limit(shape);
          for (double& v : value.values()) v = rng.uniform(-limit, limit);
        }
      }
      params_->add(std::move(name), std::move(value));
    }
    return index;
  }

  detail::LinearIdx linear(const std::string& name, std::size_t in, std::size_t out) {
    detail::LinearIdx l;
    l.weight = add(name + ".weight", {in, out}, Init::xavier);
    l.bias = add(name + ".bias", {out}, Init::zeros);
    return l;
  }

  detail::NormIdx norm(const std::string& name, std::size_t dim) {
    detail::NormIdx n;
    n.gain = add(name + ".gain", {dim}, Init::ones);
    n.bias = add(name + ".bias", {dim}, Init::zeros);
    return n;
  }

  detail::AttentionIdx attention(const std::string& name, std::size_t query_dim,
                                 std::size_t memory_dim) {
    detail::AttentionIdx a;
    a.q = linear(name + ".q", query_dim, query_dim);
    a.k = linear(name + ".k", memory_dim, query_dim);
    a.v = linear(name + ".v", memory_dim, query_dim);
    a.out = linear(name + ".out", query_dim, query_dim);
    return a;
  }

  detail::FeedForwardIdx feed_forward(const std::string& name, std::size_t dim, std::size_t hidden) {
    return {linear(name + ".in", dim, hidden), linear(name + ".out", hidden, dim)};
  }

  std::vector<ParameterSpec> specs;

 private:
  ParameterSet* params_;
  std::optional<std::uint64_t> seed_;
};

Architecture build(const ModelConfig& c, Registrar& reg) {
  c.validate();
  Architecture a;
  const std::size_t de = c.encoder_dim;
  const std::size_t dd = c.decoder_dim;
  if (c.encoder_kind == EncoderKind::acoustic) {
    std::size_t halvings = 0;
    for (std::size_t r = c.subsample_rate; r > 1; r /= 2) ++halvings;
    std::size_t freq = c.feature_dim;
    for (std::size_t i = 0; i < c.subsample_layers; ++i) {
      const std::string name = "encoder.subsample.conv" + std::to_string(i);
      const std::size_t in_ch = i == 0 ? 1 : c.subsample_channels;
      detail::SubsampleConvIdx conv;
      conv.stride = i < halvings ? 2 : 1;
      conv.weight = reg.add(name + ".weight", {c.subsample_channels, in_ch, 3, 3}, Init::xavier);
      conv.bias = reg.add(name + ".bias", {c.subsample_channels}, Init::zeros);
      a.subsample.push_back(conv);
      freq = compute::conv_output_length(freq, 3, conv.stride, 1);
    }
    a.subsample_out = reg.linear("encoder.subsample.out", c.subsample_channels * freq, de);
    a.relative_table =
        reg.add("encoder.relative_table", {2 * c.relative_clip + 1, de / c.encoder_heads}, Init::xavier);
    for (std::size_t i = 0; i < c.encoder_layers; ++i) {
      const std::string p = "encoder.layers." + std::to_string(i);
      detail::ConformerIdx l;
      l.ff1_norm = reg.norm(p + ".ff1_norm", de);
      l.ff1 = reg.feed_forward(p + ".ff1", de, c.encoder_ff_dim);
      l.attn_norm = reg.norm(p + ".attn_norm", de);
      l.attn = reg.attention(p + ".attn", de, de);
      l.conv_norm = reg.norm(p + ".conv_norm", de);
      l.conv.pointwise_in = reg.linear(p + ".conv.pointwise_in", de, 2 * de);
      l.conv.depthwise_weight = reg.add(p + ".conv.depthwise.weight", {de, c.conv_kernel}, Init::xavier);
      l.conv.depthwise_bias = reg.add(p + ".conv.depthwise.bias", {de}, Init::zeros);
      l.conv.norm = reg.norm(p + ".conv.norm", de);
      l.conv.pointwise_out = reg.linear(p + ".conv.pointwise_out", de, de);
      l.ff2_norm = reg.norm(p + ".ff2_norm", de);
      l.ff2 = reg.feed_forward(p + ".ff2", de, c.encoder_ff_dim);
      l.final_norm = reg.norm(p + ".final_norm", de);
      a.conformer.push_back(l);
    }
  } else {
    a.source_embed = reg.add("encoder.embed", {c.vocab_size, de}, Init::xavier);
    a.source_pos = reg.add("encoder.pos", {c.max_source_len, de}, Init::xavier);
    for (std::size_t i = 0; i < c.encoder_layers; ++i) {
      const std::string p = "encoder.layers." + std::to_string(i);
      detail::TransformerIdx l;
      l.attn_norm = reg.norm(p + ".attn_norm", de);
      l.attn = reg.attention(p + ".attn", de, de);
      l.ff_norm = reg.norm(p + ".ff_norm", de);
      l.ff = reg.feed_forward(p + ".ff", de, c.encoder_ff_dim);
      a.text_layers.push_back(l);
    }
    a.text_final_norm = reg.norm("encoder.final_norm", de);
  }

  a.embed = reg.add("decoder.embed", {c.vocab_size, dd}, Init::xavier);
  a.pos = reg.add("decoder.pos", {c.max_decode_len, dd}, Init::xavier);
  for (std::size_t i = 0; i < c.decoder_layers; ++i) {
    const std::string p = "decoder.layers." + std::to_string(i);
    detail::DecoderLayerIdx l;
    l.self_norm = reg.norm(p + ".self_norm", dd);
    l.self_attn = reg.attention(p + ".self_attn", dd, dd);
    l.cross_norm = reg.norm(p + ".cross_norm", dd);
    l.cross_attn = reg.attention(p + ".cross_attn", dd, de);
    l.ff_norm = reg.norm(p + ".ff_norm", dd);
    l.ff = reg.feed_forward(p + ".ff", dd, c.decoder_ff_dim);
    a.decoder.push_back(l);
  }
  a.decoder_final_norm = reg.norm("decoder.final_norm", dd);
  a.output = reg.linear("decoder.output", dd, c.vocab_size);
  return a;
}

// Forward building blocks -------------------------------------------------

struct Ctx {
  Tape& tape;
  const ParameterSet& params;
  Var p(std::size_t i) const { return tape.parameter(params[i]); }
};

Var apply_linear(const Ctx& ctx, Var x, const detail::LinearIdx& l) {
  return compute::linear(x, ctx.p(l.weight), ctx.p(l.bias));
}

Var apply_norm(const Ctx& ctx, Var x, const detail::NormIdx& n) {
  return compute::layer_norm(x, ctx.p(n.gain), ctx.p(n.bias));
}

Var apply_ff(const Ctx& ctx, Var x, const detail::FeedForwardIdx& f) {
  return apply_linear(ctx, compute::gelu(apply_linear(ctx, x, f.in)), f.out);
}

Var apply_attention(const Ctx& ctx, Var query_in, Var memory_in, const detail::AttentionIdx& a,
                    compute::AttentionOptions options) {
  Var q = apply_linear(ctx, query_in, a.q);
  Var k = apply_linear(ctx, memory_in, a.k);
  Var v = apply_linear(ctx, memory_in, a.v);
  return apply_linear(ctx, compute::attention(q, k, v, options), a.out);
}

Var conformer_block(const Ctx& ctx, Var x, const detail::ConformerIdx& l, const ModelConfig& c,
                    Var relative_table) {
  Var h = apply_ff(ctx, apply_norm(ctx, x, l.ff1_norm), l.ff1);
  x = compute::add(x, compute::scale(h, 0.5));

  h = apply_norm(ctx, x, l.attn_norm);
  compute::AttentionOptions opts;
  opts.heads = c.encoder_heads;
  opts.relative_table = relative_table;
  opts.relative_clip = c.relative_clip;
  x = compute::add(x, apply_attention(ctx, h, h, l.attn, opts));

  h = apply_norm(ctx, x, l.conv_norm);
  h = compute::glu(apply_linear(ctx, h, l.conv.pointwise_in));
  h = compute::depthwise_conv1d(h, ctx.p(l.conv.depthwise_weight), ctx.p(l.conv.depthwise_bias),
                                (c.conv_kernel - 1) / 2);
  h = compute::swish(apply_norm(ctx, h, l.conv.norm));
  x = compute::add(x, apply_linear(ctx, h, l.conv.pointwise_out));

  h = apply_ff(ctx, apply_norm(ctx, x, l.ff2_norm), l.ff2);
  x = compute::add(x, compute::scale(h, 0.5));
  return apply_norm(ctx, x, l.final_norm);
}

std::vector<int> iota_ids(std::size_t n) {
  std::vector<int> ids(n);
  std::iota(ids.begin(), ids.end(), 0);
  return ids;
}

void check_tokens(std::span<const int> ids, std::size_t vocab, const char* what) {
  for (int id : ids) {
    if (id < 0 || static_cast<std::size_t>(id) >= vocab) {
      throw ArgumentError(std::string(what) + ": token id " + std::to_string(id) +
                          " outside vocabulary of " + std::to_string(vocab));
    }
  }
}

}  // namespace

std::vector<ParameterSpec> parameter_layout(const ModelConfig& config) {
  Registrar reg(nullptr, std::nullopt);
  build(config, reg);
  return std::move(reg.specs);
}

std::size_t parameter_count(const ModelConfig& config) {
  std::size_t n = 0;
  for (const ParameterSpec& s : parameter_layout(config)) n += compute::shape_size(s.shape);
  return n;
}

Seq2SeqModel::Seq2SeqModel(ModelConfig config, Vocabulary vocabulary, std::uint64_t seed)
    : Seq2SeqModel(std::move(config), std::move(vocabulary), seed, true) {}

Seq2SeqModel Seq2SeqModel::zeros(ModelConfig config, Vocabulary vocabulary) {
  return Seq2SeqModel(std::move(config), std::move(vocabulary), 0, false);
}

Seq2SeqModel::Seq2SeqModel(ModelConfig config, Vocabulary vocabulary, std::uint64_t seed,
                           bool initialise)
    : config_(std::move(config)), vocabulary_(std::move(vocabulary)) {
  if (vocabulary_.size() != config_.vocab_size) {
    throw ArgumentError("vocabulary has " + std::to_string(vocabulary_.size()) +
                        " tokens but config.vocab_size is " + std::to_string(config_.vocab_size));
  }
  Registrar reg(&params_, initialise ? std::optional<std::uint64_t>(seed) : std::nullopt);
  arch_ = std::make_shared<const Architecture>(build(config_, reg));
}

std::size_t Seq2SeqModel::encoded_length(std::size_t frames) const {
  std::size_t len = frames;
  for (const auto& conv : arch_->subsample) len = compute::conv_output_length(len, 3, conv.stride, 1);
  return len;
}

Var Seq2SeqModel::encode(Tape& tape, const Source& source) const {
  const Ctx ctx{tape, params_};
  const Architecture& a = *arch_;
  if (config_.encoder_kind == EncoderKind::acoustic) {
    const Tensor* features = std::get_if<Tensor>(&source);
    if (!features) throw ArgumentError("acoustic encoder needs feature frames, got tokens");
    if (features->rank() != 2 || features->dim(1) != config_.feature_dim) {
      throw ShapeError("acoustic features must be T x " + std::to_string(config_.feature_dim) +
                       ", got " + compute::shape_string(features->shape()));
    }
    const std::size_t frames = features->dim(0);
    if (frames < config_.subsample_rate) {
      throw ShapeError("sequence of " + std::to_string(frames) +
                       " frames is shorter than the sub-sampling rate " +
                       std::to_string(config_.subsample_rate));
    }
    Var x = tape.constant(features->reshaped({1, frames, config_.feature_dim}));
    for (const auto& conv : a.subsample) {
      x = compute::relu(compute::conv2d(x, ctx.p(conv.weight), ctx.p(conv.bias), conv.stride, 1));
    }
    x = apply_linear(ctx, compute::flatten_channels(x), a.subsample_out);
    Var table = ctx.p(a.relative_table);
    for (const auto& layer : a.conformer) x = conformer_block(ctx, x, layer, config_, table);
    return x;
  }

  const auto* tokens = std::get_if<std::vector<int>>(&source);
  if (!tokens) throw ArgumentError("text encoder needs source tokens, got feature frames");
  if (tokens->empty()) throw ArgumentError("empty source token sequence");
  if (tokens->size() > config_.max_source_len) {
    throw ArgumentError("source of " + std::to_string(tokens->size()) +
                        " tokens exceeds max_source_len " + std::to_string(config_.max_source_len));
  }
  check_tokens(*tokens, config_.vocab_size, "encode");
  const std::vector<int> positions = iota_ids(tokens->size());
  Var x = compute::add(compute::embedding(ctx.p(a.source_embed), *tokens),
                       compute::embedding(ctx.p(a.source_pos), positions));
  compute::AttentionOptions opts;
  opts.heads = config_.encoder_heads;
  for (const auto& l : a.text_layers) {
    Var h = apply_norm(ctx, x, l.attn_norm);
    x = compute::add(x, apply_attention(ctx, h, h, l.attn, opts));
    x = compute::add(x, apply_ff(ctx, apply_norm(ctx, x, l.ff_norm), l.ff));
  }
  return apply_norm(ctx, x, a.text_final_norm);
}

Var Seq2SeqModel::decode_logits(Tape& tape, Var memory, std::span<const int> prefix) const {
  if (prefix.empty()) throw ArgumentError("decoder prefix is empty");
  if (prefix.front() != Vocabulary::kSos) throw ArgumentError("decoder prefix must start with <sos>");
  if (prefix.size() > config_.max_decode_len) {
    throw ArgumentError("decoder prefix of " + std::to_string(prefix.size()) +
                        " tokens exceeds max_decode_len " + std::to_string(config_.max_decode_len));
  }
  check_tokens(prefix, config_.vocab_size, "decode");
  if (memory.value().rank() != 2 || memory.value().dim(1) != config_.encoder_dim) {
    throw ShapeError("encoder memory must be T x " + std::to_string(config_.encoder_dim));
  }
  const Ctx ctx{tape, params_};
  const Architecture& a = *arch_;
  const std::vector<int> positions = iota_ids(prefix.size());
  Var x = compute::add(compute::embedding(ctx.p(a.embed), prefix),
                       compute::embedding(ctx.p(a.pos), positions));
  compute::AttentionOptions self_opts;
  self_opts.heads = config_.decoder_heads;
  self_opts.causal = true;
  compute::AttentionOptions cross_opts;
  cross_opts.heads = config_.decoder_heads;
  for (const auto& l : a.decoder) {
    Var h = apply_norm(ctx, x, l.self_norm);
    x = compute::add(x, apply_attention(ctx, h, h, l.self_attn, self_opts));
    h = apply_norm(ctx, x, l.cross_norm);
    x = compute::add(x, apply_attention(ctx, h, memory, l.cross_attn, cross_opts));
    x = compute::add(x, apply_ff(ctx, apply_norm(ctx, x, l.ff_norm), l.ff));
  }
  return apply_linear(ctx, apply_norm(ctx, x, a.decoder_final_norm), a.output);
}

Tensor Seq2SeqModel::encode(const Source& source) const {
  Tape tape(false);
  return encode(tape, source).value();
}

std::vector<double> Seq2SeqModel::decode_step(std::span<const int> prefix, const Tensor& memory) const {
  Tape tape(false);
  Var logits = decode_logits(tape, tape.constant(memory), prefix);
  Var last = compute::slice_rows(logits, prefix.size() - 1, 1);
  const Tensor& dist = compute::softmax(last).value();
  return {dist.values().begin(), dist.values().end()};
}

std::vector<double> Seq2SeqModel::decode_step_log_probs(std::span<const int> prefix,
                                                        const Tensor& memory) const {
  Tape tape(false);
  Var logits = decode_logits(tape, tape.constant(memory), prefix);
  Var last = compute::slice_rows(logits, prefix.size() - 1, 1);
  const Tensor& lp = compute::log_softmax(last).value();
  return {lp.values().begin(), lp.values().end()};
}

Tensor Seq2SeqModel::forward_teacher_forced(const Source& source, std::span<const int> targets) const {
  if (targets.empty()) throw ArgumentError("teacher forcing needs a non-empty target");
  if (targets.back() != Vocabulary::kEos) throw ArgumentError("target must end with <eos>");
  Tape tape(false);
  Var memory = encode(tape, source);
  const std::vector<int> input = teacher_forcing_input(targets);
  return compute::softmax(decode_logits(tape, memory, input)).value();
}

std::vector<int> teacher_forcing_input(std::span<const int> targets) {
  std::vector<int> input;
  input.reserve(targets.size());
  input.push_back(Vocabulary::kSos);
  for (std::size_t i = 0; i + 1 < targets.size(); ++i) input.push_back(targets[i]);
  return input;
}

}  // namespace ssum::model
