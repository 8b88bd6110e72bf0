// pipeline.hpp
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
//
// Copyright 2026 The stutterlab authors
//
// \file
// End to end experiment pipeline. Every stage reads and writes files under
// the output directory, so the full run and the stage-by-stage command
// line path produce byte-identical artifacts. All stochastic stages derive
// their streams from the master seed plus stable labels; reruns and
// different worker counts reproduce every byte.

#ifndef STUTTERLAB_PIPELINE_HPP_
#define STUTTERLAB_PIPELINE_HPP_

#include <cstdint>
#include <string>

#include "stutterlab/amsim.hpp"
#include "stutterlab/corpus.hpp"
#include "stutterlab/decoder.hpp"
#include "stutterlab/ngram.hpp"
#include "stutterlab/nlu.hpp"
#include "stutterlab/severity.hpp"
#include "stutterlab/tuner.hpp"

namespace stutterlab {

struct RunConfig {
  std::uint64_t master_seed = 7;
  int workers = 1;
  int utterances_per_speaker = 90;
  std::string out_dir = "out";
  NGramOptions lm;
  InjectionOptions injection;
  ConfusionModel confusion;
  SeverityOptions severity;
  NluOptions nlu;
  ParamGrid grid;
  CvScheme cv;
  DecoderConfig decoder;
};

// JSON round trip; every key optional, unknown top-level keys rejected.
RunConfig LoadRunConfig(const std::string& path);
void SaveRunConfig(const RunConfig& config, const std::string& path);

// Decode passes share the corpus emissions; the pass name picks the
// decoder settings and the output file.
enum class DecodePass { kDefault, kTuned, kFluent };
const char* DecodePassName(DecodePass pass);

// Stage entry points. Each one loads its inputs from config.out_dir and
// writes its artifacts there, failing with std::runtime_error when a
// required input has not been produced yet.
void StageGen(const RunConfig& config);       // corpus_*.jsonl
void StageTrainLm(const RunConfig& config);   // lm.json
void StageTune(const RunConfig& config);      // tune.csv, tune_summary.json
void StageDecode(const RunConfig& config, DecodePass pass);  // nbest_*.jsonl
void StageSeverity(const RunConfig& config);  // severity.csv, severity_summary.json
void StageScore(const RunConfig& config);     // table2-5, fig_*.csv
void StageNlu(const RunConfig& config);       // table6.csv
void StageSummary(const RunConfig& config);   // summary.json

// All stages in dependency order.
void RunPipeline(const RunConfig& config);

}  // namespace stutterlab

#endif  // STUTTERLAB_PIPELINE_HPP_
