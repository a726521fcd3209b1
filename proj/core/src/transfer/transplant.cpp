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

#include "ssum/transfer/transplant.hpp"

#include "ssum/common/error.hpp"

namespace ssum::transfer {

model::ModelConfig transplant_config(const model::ModelConfig& encoder_source,
                                     const model::ModelConfig& decoder_source) {
  model::ModelConfig c = encoder_source;
  c.decoder_layers = decoder_source.decoder_layers;
  c.decoder_dim = decoder_source.decoder_dim;
  c.decoder_heads = decoder_source.decoder_heads;
  c.decoder_ff_dim = decoder_source.decoder_ff_dim;
  c.max_decode_len = decoder_source.max_decode_len;
  c.label_smoothing = decoder_source.label_smoothing;
  return c;
}

model::Seq2SeqModel transplant(const Checkpoint& encoder_source, const Checkpoint& decoder_source) {
  const model::Seq2SeqModel& enc = encoder_source.model;
  const model::Seq2SeqModel& dec = decoder_source.model;
  if (enc.vocabulary().hash() != dec.vocabulary().hash() || !(enc.vocabulary() == dec.vocabulary())) {
    throw TransplantError("transplant: encoder and decoder sources use different vocabularies");
  }
  if (enc.config().encoder_dim != dec.config().encoder_dim) {
    throw TransplantError("transplant: decoder source attends to a " + std::to_string(dec.config().encoder_dim) +
                          "-dim memory, encoder source produces " + std::to_string(enc.config().encoder_dim));
  }
  model::Seq2SeqModel out =
      model::Seq2SeqModel::zeros(transplant_config(enc.config(), dec.config()), enc.vocabulary());
  for (auto& p : out.parameters()) {
    const bool from_encoder = model::is_encoder_parameter(p.name);
    if (!from_encoder && !model::is_decoder_parameter(p.name)) {
      throw TransplantError("transplant: parameter '" + p.name + "' is neither encoder nor decoder");
    }
    const model::ParameterSet& src = (from_encoder ? enc : dec).parameters();
    const auto idx = src.find(p.name);
    if (!idx) {
      throw TransplantError("transplant: parameter '" + p.name + "' missing from the " +
                            (from_encoder ? "encoder" : "decoder") + " source");
    }
    const compute::Tensor& value = src[*idx].value;
    if (value.shape() != p.value.shape()) {
      throw TransplantError("transplant: parameter '" + p.name + "' has shape " +
                            compute::shape_string(value.shape()) + " in the source, target needs " +
                            compute::shape_string(p.value.shape()));
    }
    p.value = value;
  }
  return out;
}

model::Seq2SeqModel transplant(const TransplantSpec& spec) {
  const Checkpoint enc = load_checkpoint(spec.encoder.path);
  const Checkpoint dec = load_checkpoint(spec.decoder.path);
  if (spec.strict) {
    auto check = [](const Checkpoint& c, const CheckpointSource& s, const char* role) {
      if (s.expected && c.provenance != *s.expected) {
        throw TransplantError(std::string("transplant: ") + role + " source " + s.path.string() + " is '" +
                              std::string(to_string(c.provenance)) + "', expected '" +
                              std::string(to_string(*s.expected)) + "'");
      }
    };
    check(enc, spec.encoder, "encoder");
    check(dec, spec.decoder, "decoder");
  }
  return transplant(enc, dec);
}

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::P1: return "P-1";
    case Variant::P2: return "P-2";
    case Variant::P3: return "P-3";
  }
  return "unknown";
}

Variant variant_from_string(std::string_view text) {
  for (Variant v : {Variant::P1, Variant::P2, Variant::P3}) {
    if (to_string(v) == text) return v;
  }
  throw ArgumentError("unknown transplant variant '" + std::string(text) + "'");
}

void CheckpointStore::publish(Provenance p, std::filesystem::path path) { paths_[p] = std::move(path); }

std::optional<std::filesystem::path> CheckpointStore::find(Provenance p) const {
  const auto it = paths_.find(p);
  if (it == paths_.end()) return std::nullopt;
  return it->second;
}

TransplantSpec build_variant(Variant variant, const CheckpointStore& store) {
  Provenance enc = Provenance::ssum, dec = Provenance::tsum;
  switch (variant) {
    case Variant::P1: enc = Provenance::ssum; dec = Provenance::tsum; break;
    case Variant::P2: enc = Provenance::asr; dec = Provenance::tsum; break;
    case Variant::P3: enc = Provenance::ssum; dec = Provenance::lm; break;
  }
  auto source = [&](Provenance p) {
    const auto path = store.find(p);
    if (!path) {
      throw TransplantError(std::string(to_string(variant)) + " needs a '" + std::string(to_string(p)) +
                            "' checkpoint, none is published");
    }
    return CheckpointSource{*path, p};
  };
  return TransplantSpec{source(enc), source(dec), true};
}

}  // namespace ssum::transfer
