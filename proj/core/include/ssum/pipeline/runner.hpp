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

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "ssum/data/storage.hpp"
#include "ssum/metrics/report.hpp"
#include "ssum/pipeline/experiment.hpp"
#include "ssum/transfer/checkpoint.hpp"

namespace ssum::pipeline {

/// A stage failed; the message names the stage and its log file.
class StageFailure : public Error {
 public:
  using Error::Error;
};

/// A persisted stage output.
struct StageArtifact {
  std::string stage;
  std::filesystem::path checkpoint;
  /// Digest of everything the stage depends on: configs, data settings,
  /// seed and the digests of its inputs.
  std::string digest;
  bool reused = false;
};

struct SystemResult {
  SystemId system = SystemId::B1;
  bool ok = false;
  std::string error;
  metrics::ScoreReport scores;
  /// Wall-clock seconds; reported in the text table only.
  double runtime_seconds = 0.0;
  std::string config_digest;
  std::filesystem::path hypotheses;
  std::filesystem::path references;
};

struct ResultsTable {
  double fraction = 1.0;
  std::vector<SystemResult> rows;
  /// WER of the ASR pre-trained model on the evaluation split, percent.
  std::optional<double> asr_wer;

  std::string to_text() const;
  /// Deterministic "key=value" lines; excludes runtimes.
  std::string to_key_values() const;
  /// Compares the ROUGE-L ordering with the full-scale reference ordering.
  /// Informational only.
  std::string ordering_note() const;
};

/// Scores of the full-scale reference systems: ROUGE-1, ROUGE-2, ROUGE-L,
/// METEOR.
struct ReferenceScores {
  SystemId system;
  double rouge1, rouge2, rougeL, meteor;
};
const std::vector<ReferenceScores>& full_scale_reference();

/// Beam-decodes the evaluation features of `split` with a speech model.
std::vector<data::IdText> decode_summaries(const model::Seq2SeqModel& model,
                                           std::span<const data::Triplet> split,
                                           const decoding::BeamConfig& beam);
/// Speech model transcribes, text model summarizes the transcript.
std::vector<data::IdText> decode_cascade(const model::Seq2SeqModel& asr, const model::Seq2SeqModel& tsum,
                                         std::span<const data::Triplet> split,
                                         const decoding::BeamConfig& beam);
std::vector<data::IdText> decode_transcripts(const model::Seq2SeqModel& asr,
                                             std::span<const data::Triplet> split,
                                             const decoding::BeamConfig& beam);
/// Summary (or transcription) references of a split as text.
std::vector<data::IdText> references(std::span<const data::Triplet> split, const model::Vocabulary& vocab,
                                     bool transcripts = false);

/// Executes plans under one output directory.
///
/// Layout: <out>/shared holds the full-data pre-trained checkpoints;
/// <out>/fraction-<f> holds fraction-dependent checkpoints, per-system
/// decode outputs and the results files. A stage whose checkpoint exists
/// with a matching digest is reused instead of retrained.
class Runner {
 public:
  Runner(ExperimentConfig config, std::filesystem::path out, std::ostream* log = nullptr);

  const ExperimentConfig& config() const noexcept { return config_; }
  const std::filesystem::path& out() const noexcept { return out_; }

  /// Generated on first use, or read from <out>/corpus when gen-data wrote
  /// it with the same config.
  const data::Corpus& corpus();
  /// Writes the corpus to <out>/corpus.
  std::filesystem::path write_corpus();

  std::filesystem::path fraction_dir(double fraction) const;
  std::filesystem::path checkpoint_path(const PlannedStage& stage, double fraction) const;

  /// Runs (or reuses) one stage. Inputs must already exist unless
  /// `build_inputs` is set, in which case they are built first.
  StageArtifact run_stage(const std::string& stage, double fraction, bool build_inputs);

  /// All stages of the system's plan, then decode and evaluate. Throws
  /// StageFailure.
  SystemResult run_system(SystemId system, double fraction);

  /// Decodes the evaluation split with an already trained system.
  SystemResult decode_system(SystemId system, double fraction);

  /// Runs every listed system, recording failures as rows. Writes
  /// results.txt and results.kv under the fraction directory.
  ResultsTable run_table(std::span<const SystemId> systems, double fraction);

 private:
  PlannedStage find_stage(const std::string& name) const;
  std::string stage_digest(const PlannedStage& stage, double fraction);
  void train(const PlannedStage& stage, double fraction, const std::vector<StageArtifact>& inputs,
             const std::filesystem::path& dest, const std::string& digest);
  data::PairedDataset training_set(const PlannedStage& stage, double fraction);
  void say(const std::string& line) const;

  ExperimentConfig config_;
  std::filesystem::path out_;
  std::ostream* log_;
  std::unique_ptr<data::Corpus> corpus_;
  std::map<std::string, std::string> digests_;
};

/// Per-system ROUGE-L across fractions, and whether it never decreases.
std::string monotonicity_report(const std::vector<ResultsTable>& tables);

}  // namespace ssum::pipeline
