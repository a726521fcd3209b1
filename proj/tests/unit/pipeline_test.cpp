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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ssum/common/error.hpp"
#include "ssum/pipeline/experiment.hpp"
#include "ssum/pipeline/runner.hpp"

namespace ssum::pipeline {
namespace {

namespace fs = std::filesystem;

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("ssum-pipeline-test-" + name);
  fs::remove_all(p);
  return p;
}

std::vector<std::string> stage_names(const ExperimentPlan& p) {
  std::vector<std::string> out;
  for (const auto& s : p.stages) out.push_back(s.name);
  return out;
}

/// Smoke settings shrunk further so a whole table runs in seconds.
ExperimentConfig tiny_experiment() {
  ExperimentConfig c = ExperimentConfig::smoke();
  c.corpus.train_size = 24;
  c.corpus.validation_size = 6;
  c.corpus.evaluation_size = 6;
  c.external_text.size = 12;
  c.beam.max_length = 12;
  return c;
}

TEST(Plan, StagesPerSystem) {
  using V = std::vector<std::string>;
  EXPECT_EQ(stage_names(make_plan(SystemId::C1, 1.0, "o", 1)), (V{"asr", "lm", "tsum"}));
  EXPECT_EQ(make_plan(SystemId::C1, 1.0, "o", 1).evaluated, (V{"asr", "tsum"}));
  EXPECT_EQ(stage_names(make_plan(SystemId::B1, 1.0, "o", 1)), (V{"asr", "ssum"}));
  EXPECT_EQ(stage_names(make_plan(SystemId::B2, 1.0, "o", 1)), (V{"asr", "ssum", "augment"}));
  const auto p1 = make_plan(SystemId::P1, 1.0, "o", 1);
  EXPECT_EQ(p1.stages[4].name, "transplant-P-1");
  EXPECT_EQ(p1.stages[4].inputs, (V{"ssum", "tsum"}));
  EXPECT_EQ(make_plan(SystemId::P2, 1.0, "o", 1).stages[3].inputs, (V{"asr", "tsum"}));
  EXPECT_EQ(make_plan(SystemId::P3, 1.0, "o", 1).stages[3].inputs, (V{"ssum", "lm"}));
  for (SystemId s : all_systems()) {
    EXPECT_NO_THROW(validate_plan(make_plan(s, 0.5, "o", 1)));
    EXPECT_EQ(system_from_string(to_string(s)), s);
  }
  EXPECT_THROW(make_plan(SystemId::B1, 0.0, "o", 1), ArgumentError);
  EXPECT_THROW(system_from_string("X-9"), ArgumentError);
}

TEST(Plan, ValidationCatchesOrderingErrors) {
  auto p = make_plan(SystemId::B1, 1.0, "o", 1);
  std::swap(p.stages[0], p.stages[1]);
  EXPECT_THROW(validate_plan(p), ArgumentError);
  p = make_plan(SystemId::P1, 1.0, "o", 1);
  p.stages[4].inputs.pop_back();
  EXPECT_THROW(validate_plan(p), ArgumentError);
}

TEST(Config, JsonRoundTrip) {
  for (const ExperimentConfig& c : {ExperimentConfig::toy(), ExperimentConfig::smoke()}) {
    const ExperimentConfig back = ExperimentConfig::from_json(c.to_json());
    EXPECT_EQ(back.to_json(), c.to_json());
  }
  EXPECT_THROW(ExperimentConfig::from_json(R"({"sead": 3})"), ArgumentError);
  EXPECT_THROW(ExperimentConfig::from_json(R"({"stages": {"asr": {"batch_size": 0}}})"), ArgumentError);
  const ExperimentConfig partial = ExperimentConfig::from_json(R"({"seed": 9, "beam": {"width": 3}})");
  EXPECT_EQ(partial.seed, 9u);
  EXPECT_EQ(partial.beam.width, 3u);
  EXPECT_EQ(partial.beam.max_length, ExperimentConfig::toy().beam.max_length);
  EXPECT_THROW(ExperimentConfig::load("/nonexistent/config.json"), IoError);
}

TEST(Runner, SystemRunsThenReusesCheckpoints) {
  const fs::path out = scratch("reuse");
  std::ostringstream log;
  Runner a(tiny_experiment(), out, &log);
  const SystemResult r = a.run_system(SystemId::B1, 1.0);
  ASSERT_TRUE(r.ok) << r.error;
  EXPECT_EQ(r.scores.count, 6u);
  EXPECT_TRUE(fs::exists(r.hypotheses));
  EXPECT_TRUE(fs::exists(r.references));
  EXPECT_TRUE(fs::exists(out / "fraction-1" / "B-1" / "scores.kv"));
  EXPECT_TRUE(fs::exists(out / "shared" / "checkpoints" / "asr.ckpt.log.tsv"));

  Runner b(tiny_experiment(), out);
  EXPECT_TRUE(b.run_stage("asr", 1.0, false).reused);
  EXPECT_TRUE(b.run_stage("ssum", 1.0, false).reused);
  // A changed seed invalidates every stage.
  ExperimentConfig other = tiny_experiment();
  other.seed = 2;
  Runner c(other, out);
  EXPECT_THROW(c.run_stage("ssum", 1.0, false), StageFailure);
  EXPECT_FALSE(c.run_stage("asr", 1.0, false).reused);
}

TEST(Runner, FractionsGetTheirOwnFineTuning) {
  const fs::path out = scratch("fraction");
  Runner r(tiny_experiment(), out);
  r.run_stage("ssum", 1.0, true);
  const StageArtifact half = r.run_stage("ssum", 0.5, true);
  EXPECT_FALSE(half.reused);
  EXPECT_EQ(half.checkpoint, out / "fraction-0.5" / "checkpoints" / "ssum.ckpt");
  EXPECT_TRUE(r.run_stage("asr", 0.5, false).reused);
}

TEST(Runner, TableIsReproducibleAndExcludesRuntime) {
  const std::vector<SystemId> systems{SystemId::C1, SystemId::B1, SystemId::P3};
  Runner a(tiny_experiment(), scratch("table-a"));
  Runner b(tiny_experiment(), scratch("table-b"));
  const ResultsTable ta = a.run_table(systems, 1.0);
  const ResultsTable tb = b.run_table(systems, 1.0);
  ASSERT_EQ(ta.rows.size(), 3u);
  for (const auto& row : ta.rows) EXPECT_TRUE(row.ok) << row.error;
  EXPECT_EQ(ta.to_key_values(), tb.to_key_values());
  EXPECT_EQ(ta.to_key_values().find("runtime"), std::string::npos);
  EXPECT_NE(ta.to_text().find("runtime"), std::string::npos);
  EXPECT_TRUE(ta.asr_wer.has_value());
  EXPECT_TRUE(fs::exists(a.out() / "fraction-1" / "results.kv"));
  EXPECT_NE(ta.ordering_note().find("informational"), std::string::npos);
}

TEST(Runner, MonotonicityReportIsInformational) {
  ResultsTable low, high;
  low.fraction = 0.25;
  high.fraction = 1.0;
  SystemResult r;
  r.system = SystemId::B1;
  r.ok = true;
  r.scores.rougeL = 50;
  low.rows.push_back(r);
  r.scores.rougeL = 40;
  high.rows.push_back(r);
  const std::string rep = monotonicity_report({high, low});
  EXPECT_NE(rep.find("B-1 0.25:50.00 1.00:40.00  non-decreasing: no"), std::string::npos) << rep;
}

TEST(Runner, FullScaleReferenceCoversEverySystem) {
  EXPECT_EQ(full_scale_reference().size(), all_systems().size());
}

}  // namespace
}  // namespace ssum::pipeline
