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

#include "ssum/data/storage.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "../internal/json_io.hpp"
#include "../internal/key_reader.hpp"
#include "ssum/common/error.hpp"

namespace ssum::data {

namespace fs = std::filesystem;

namespace {

void put_u32(std::ostream& out, std::uint32_t v) {
  const std::array<char, 4> b = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                                 static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
  out.write(b.data(), 4);
}

std::uint32_t get_u32(std::istream& in, const fs::path& path) {
  std::array<unsigned char, 4> b{};
  if (!in.read(reinterpret_cast<char*>(b.data()), 4)) throw IoError(path.string() + ": truncated");
  return static_cast<std::uint32_t>(b[0]) | static_cast<std::uint32_t>(b[1]) << 8 |
         static_cast<std::uint32_t>(b[2]) << 16 | static_cast<std::uint32_t>(b[3]) << 24;
}

std::string join_tokens(const model::Vocabulary& vocab, const std::vector<int>& ids) {
  std::string out;
  for (int id : ids) {
    if (!out.empty()) out += ' ';
    out += vocab.token(id);
  }
  return out;
}

std::vector<int> split_tokens(const model::Vocabulary& vocab, const std::string& text,
                              const std::string& where) {
  std::vector<int> ids;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    const auto id = vocab.find(tok);
    if (!id) throw IoError(where + ": unknown token '" + tok + "'");
    ids.push_back(*id);
  }
  return ids;
}

std::string read_all(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

std::vector<IdText> read_id_text(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<IdText> lines;
  std::set<std::string> ids;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw IoError(path.string() + ":" + std::to_string(number) + ": missing tab");
    }
    IdText row{line.substr(0, tab), line.substr(tab + 1)};
    if (!ids.insert(row.id).second) {
      throw IoError(path.string() + ":" + std::to_string(number) + ": repeated id '" + row.id + "'");
    }
    lines.push_back(std::move(row));
  }
  return lines;
}

void write_id_text(const fs::path& path, const std::vector<IdText>& lines) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  for (const IdText& l : lines) out << l.id << '\t' << l.text << '\n';
  if (!out) throw IoError("failed writing " + path.string());
}

void write_features(const fs::path& path, const Tensor& features) {
  if (features.rank() != 2) throw ShapeError("write_features: expected a T x F matrix");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  put_u32(out, static_cast<std::uint32_t>(features.dim(0)));
  put_u32(out, static_cast<std::uint32_t>(features.dim(1)));
  for (double v : features.values()) {
    put_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
  }
  if (!out) throw IoError("failed writing " + path.string());
}

Tensor read_features(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  const std::size_t t = get_u32(in, path);
  const std::size_t f = get_u32(in, path);
  Tensor out({t, f});
  for (double& v : out.values()) v = std::bit_cast<float>(get_u32(in, path));
  if (in.peek() != std::char_traits<char>::eof()) throw IoError(path.string() + ": trailing bytes");
  return out;
}

void write_corpus(const Corpus& corpus, const fs::path& dir) {
  fs::create_directories(dir / "features");
  {
    nlohmann::json j;
    j["config"] = corpus.config;
    j["vocabulary"] = corpus.vocabulary().tokens();
    std::ofstream out(dir / "corpus.json");
    out << j.dump(2) << '\n';
    if (!out) throw IoError("failed writing " + (dir / "corpus.json").string());
  }
  std::vector<IdText> manifest, transcripts, summaries;
  const std::pair<const char*, const std::vector<Triplet>*> splits[] = {
      {"train", &corpus.train}, {"validation", &corpus.validation}, {"evaluation", &corpus.evaluation}};
  for (const auto& [name, split] : splits) {
    for (const Triplet& t : *split) {
      manifest.push_back({t.id, std::string(name) + "\treal"});
      transcripts.push_back({t.id, join_tokens(corpus.vocabulary(), t.transcription)});
      summaries.push_back({t.id, join_tokens(corpus.vocabulary(), t.summary)});
      write_features(dir / "features" / (t.id + ".f32"), t.features);
    }
  }
  write_id_text(dir / "manifest.tsv", manifest);
  write_id_text(dir / "transcripts.txt", transcripts);
  write_id_text(dir / "summaries.txt", summaries);
}

Corpus read_corpus(const fs::path& dir) {
  CorpusConfig config;
  std::vector<std::string> tokens;
  try {
    const auto j = nlohmann::json::parse(read_all(dir / "corpus.json"));
    internal::KeyReader(j, "corpus.json").get("config", config).get("vocabulary", tokens).finish();
  } catch (const nlohmann::json::exception& e) {
    throw IoError((dir / "corpus.json").string() + ": " + e.what());
  }
  Corpus corpus{config, make_lexicon(config), {}, {}, {}};
  if (corpus.vocabulary().tokens() != tokens) {
    throw IoError(dir.string() + ": stored vocabulary differs from the one the config generates");
  }
  std::map<std::string, std::vector<int>> transcripts, summaries;
  for (const IdText& l : read_id_text(dir / "transcripts.txt")) {
    transcripts[l.id] = split_tokens(corpus.vocabulary(), l.text, "transcripts.txt");
  }
  for (const IdText& l : read_id_text(dir / "summaries.txt")) {
    summaries[l.id] = split_tokens(corpus.vocabulary(), l.text, "summaries.txt");
  }
  for (const IdText& l : read_id_text(dir / "manifest.tsv")) {
    const std::string split = l.text.substr(0, l.text.find('\t'));
    std::vector<Triplet>* target = split == "train"        ? &corpus.train
                                   : split == "validation" ? &corpus.validation
                                   : split == "evaluation" ? &corpus.evaluation
                                                           : nullptr;
    if (!target) throw IoError("manifest.tsv: unknown split '" + split + "' for " + l.id);
    if (!transcripts.count(l.id) || !summaries.count(l.id)) {
      throw IoError("manifest.tsv: no token files entry for " + l.id);
    }
    target->push_back({l.id, read_features(dir / "features" / (l.id + ".f32")), transcripts[l.id],
                       summaries[l.id]});
  }
  return corpus;
}

}  // namespace ssum::data
