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

#include "ssum/transfer/checkpoint.hpp"

#include <bit>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "../internal/json_io.hpp"
#include "ssum/common/hash.hpp"

namespace ssum::transfer {

namespace fs = std::filesystem;
using compute::Shape;
using compute::Tensor;

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::asr: return "asr";
    case Provenance::lm: return "lm";
    case Provenance::ssum: return "ssum";
    case Provenance::tsum: return "tsum";
    case Provenance::transferred: return "transferred";
  }
  return "unknown";
}

Provenance provenance_from_string(std::string_view text) {
  for (Provenance p : {Provenance::asr, Provenance::lm, Provenance::ssum, Provenance::tsum,
                       Provenance::transferred}) {
    if (to_string(p) == text) return p;
  }
  throw ArgumentError("unknown provenance '" + std::string(text) + "'");
}

namespace {

constexpr std::string_view kMagic = "SSUMCKPT";

void append_le(std::string& out, double v) {
  auto bits = std::bit_cast<std::uint64_t>(v);
  for (int i = 0; i < 8; ++i) {
    out.push_back(static_cast<char>(bits & 0xff));
    bits >>= 8;
  }
}

double read_le(const char* p) {
  std::uint64_t bits = 0;
  for (int i = 7; i >= 0; --i) bits = bits << 8 | static_cast<unsigned char>(p[i]);
  return std::bit_cast<double>(bits);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write(const Checkpoint& ckpt, const model::ModelConfig& declared, const fs::path& path) {
  const model::ParameterSet& params = ckpt.model.parameters();
  std::string payload;
  payload.reserve(params.element_count() * 8);
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& p : params) {
    const std::size_t offset = payload.size();
    for (double v : p.value.values()) append_le(payload, v);
    entries.push_back({{"name", p.name},
                       {"shape", p.value.shape()},
                       {"offset", offset},
                       {"count", p.value.size()},
                       {"checksum", to_hex(fnv64(std::string_view(payload).substr(offset)))}});
  }
  const model::Vocabulary& vocab = ckpt.model.vocabulary();
  nlohmann::json header = {{"config", declared},
                           {"vocabulary", vocab.tokens()},
                           {"vocabulary_hash", to_hex(vocab.hash())},
                           {"provenance", to_string(ckpt.provenance)},
                           {"log_digest", ckpt.log_digest},
                           {"parameters", std::move(entries)}};
  const std::string text = header.dump();
  std::string file = std::string(kMagic) + " " + std::to_string(kCheckpointVersion) + "\n" +
                     std::to_string(text.size()) + " " + std::to_string(payload.size()) + " " +
                     to_hex(fnv64(text)) + "\n" + text + payload;

  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out.write(file.data(), static_cast<std::streamsize>(file.size()));
    out.flush();
    if (!out) throw IoError("failed writing " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string next_line(const std::string& bytes, std::size_t& pos, const fs::path& path) {
  const auto nl = bytes.find('\n', pos);
  if (nl == std::string::npos) throw CheckpointError(path.string() + ": truncated preamble");
  std::string line = bytes.substr(pos, nl - pos);
  pos = nl + 1;
  return line;
}

}  // namespace

void save_checkpoint(const Checkpoint& checkpoint, const fs::path& path) {
  write(checkpoint, checkpoint.model.config(), path);
}

namespace detail {
void save_with_declared_config(const Checkpoint& checkpoint, const model::ModelConfig& declared,
                               const fs::path& path) {
  write(checkpoint, declared, path);
}
}  // namespace detail

Checkpoint load_checkpoint(const fs::path& path) {
  const std::string where = path.string();
  const std::string bytes = read_file(path);
  std::size_t pos = 0;

  std::istringstream magic(next_line(bytes, pos, path));
  std::string tag;
  int version = 0;
  if (!(magic >> tag >> version) || tag != kMagic) throw CheckpointError(where + ": not a checkpoint");
  if (version != kCheckpointVersion) {
    throw CheckpointError(where + ": unsupported format version " + std::to_string(version));
  }
  std::istringstream sizes(next_line(bytes, pos, path));
  std::size_t header_bytes = 0, payload_bytes = 0;
  std::string header_sum;
  if (!(sizes >> header_bytes >> payload_bytes >> header_sum)) {
    throw CheckpointError(where + ": malformed size line");
  }
  if (bytes.size() - pos < header_bytes || bytes.size() - pos - header_bytes < payload_bytes) {
    throw CheckpointError(where + ": truncated file");
  }
  if (bytes.size() - pos - header_bytes != payload_bytes) {
    throw CheckpointError(where + ": trailing bytes after payload");
  }
  const std::string_view header_text(bytes.data() + pos, header_bytes);
  if (to_hex(fnv64(header_text)) != header_sum) throw CheckpointError(where + ": header checksum mismatch");
  const char* payload = bytes.data() + pos + header_bytes;

  model::ModelConfig config;
  std::vector<std::string> tokens;
  std::string vocab_hash, provenance_text, log_digest;
  nlohmann::json entries;
  try {
    const auto header = nlohmann::json::parse(header_text);
    header.at("config").get_to(config);
    header.at("vocabulary").get_to(tokens);
    header.at("vocabulary_hash").get_to(vocab_hash);
    header.at("provenance").get_to(provenance_text);
    header.at("log_digest").get_to(log_digest);
    entries = header.at("parameters");
    config.validate();
  } catch (const nlohmann::json::exception& e) {
    throw CheckpointError(where + ": bad header: " + e.what());
  } catch (const ArgumentError& e) {
    throw CheckpointError(where + ": bad header: " + e.what());
  }
  model::Vocabulary vocab;
  Provenance provenance = Provenance::asr;
  try {
    vocab = model::Vocabulary::from_tokens(tokens);
    provenance = provenance_from_string(provenance_text);
  } catch (const ArgumentError& e) {
    throw CheckpointError(where + ": " + e.what());
  }
  if (to_hex(vocab.hash()) != vocab_hash) throw CheckpointError(where + ": vocabulary hash mismatch");
  if (vocab.size() != config.vocab_size) {
    throw CheckpointError(where + ": vocabulary has " + std::to_string(vocab.size()) +
                          " tokens, config declares " + std::to_string(config.vocab_size));
  }

  const std::vector<model::ParameterSpec> layout = model::parameter_layout(config);
  if (!entries.is_array()) throw CheckpointError(where + ": parameters is not a list");
  std::vector<Tensor> values;
  values.reserve(layout.size());
  std::size_t expected_offset = 0;
  try {
    for (std::size_t i = 0; i < std::max(layout.size(), entries.size()); ++i) {
      if (i >= entries.size()) {
        throw CheckpointError(where + ": parameter '" + layout[i].name + "' missing");
      }
      const auto& e = entries[i];
      const std::string name = e.at("name").get<std::string>();
      if (i >= layout.size()) throw CheckpointError(where + ": unexpected parameter '" + name + "'");
      if (name != layout[i].name) {
        throw CheckpointError(where + ": parameter '" + layout[i].name + "' expected at position " +
                              std::to_string(i) + ", found '" + name + "'");
      }
      const Shape shape = e.at("shape").get<Shape>();
      if (shape != layout[i].shape) {
        throw CheckpointError(where + ": parameter '" + name + "' has shape " + compute::shape_string(shape) +
                              " but the config implies " + compute::shape_string(layout[i].shape));
      }
      const auto offset = e.at("offset").get<std::size_t>();
      const auto count = e.at("count").get<std::size_t>();
      if (offset != expected_offset || count != compute::shape_size(shape) ||
          offset + count * 8 > payload_bytes) {
        throw CheckpointError(where + ": parameter '" + name + "' has an inconsistent offset or count");
      }
      const std::string_view raw(payload + offset, count * 8);
      if (to_hex(fnv64(raw)) != e.at("checksum").get<std::string>()) {
        throw CheckpointError(where + ": checksum mismatch in parameter '" + name + "'");
      }
      Tensor t(shape);
      for (std::size_t k = 0; k < count; ++k) t[k] = read_le(raw.data() + 8 * k);
      values.push_back(std::move(t));
      expected_offset += count * 8;
    }
  } catch (const nlohmann::json::exception& e) {
    throw CheckpointError(where + ": bad parameter entry: " + e.what());
  }
  if (expected_offset != payload_bytes) throw CheckpointError(where + ": payload has unclaimed bytes");

  Checkpoint out{model::Seq2SeqModel::zeros(config, vocab), provenance, log_digest};
  for (std::size_t i = 0; i < values.size(); ++i) out.model.parameters()[i].value = std::move(values[i]);
  return out;
}

std::string file_digest(const fs::path& path) { return to_hex(fnv64(read_file(path))); }

}  // namespace ssum::transfer
