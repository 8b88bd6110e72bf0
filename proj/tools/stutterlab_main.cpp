// stutterlab_main.cpp
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
// Command line front end for the experiment pipeline. Every stage reads
// and writes files under the output directory, so stages can be run one
// at a time or all at once with `report`; both paths produce identical
// artifacts.

#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "stutterlab/pipeline.hpp"

namespace {

struct CliOverrides {
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  int workers = 0;
};

void AddCommonOptions(CLI::App* sub, CliOverrides* cli) {
  sub->add_option("--config", cli->config_path,
                  "JSON run configuration (defaults apply when omitted)")
      ->check(CLI::ExistingFile);
  sub->add_option("--seed", cli->seed, "override the master seed");
  sub->add_option("--workers", cli->workers, "override the worker count")
      ->envname("STUTTERLAB_WORKERS")
      ->check(CLI::PositiveNumber);
  sub->add_option("--out", cli->out_dir, "override the output directory")
      ->envname("STUTTERLAB_OUT");
}

stutterlab::RunConfig ResolveConfig(const CLI::App* sub,
                                    const CliOverrides& cli) {
  stutterlab::RunConfig config;
  if (sub->count("--config") > 0) {
    config = stutterlab::LoadRunConfig(cli.config_path);
  }
  if (sub->count("--seed") > 0) config.master_seed = cli.seed;
  if (sub->count("--workers") > 0) config.workers = cli.workers;
  if (sub->count("--out") > 0) config.out_dir = cli.out_dir;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stutterlab: a laboratory for speech recognition on synthetic"
               " dysfluent speech"};
  app.require_subcommand(1);
  CliOverrides cli;

  CLI::App* gen = app.add_subcommand(
      "gen", "generate the dysfluent and fluent corpora");
  CLI::App* train_lm = app.add_subcommand(
      "train-lm", "train the n-gram language model on intended transcripts");
  CLI::App* tune = app.add_subcommand(
      "tune", "cross-validated decoder parameter search");
  CLI::App* decode = app.add_subcommand(
      "decode", "beam-search decode a corpus to an n-best file");
  CLI::App* severity = app.add_subcommand(
      "severity", "frame-level severity scores and correlations");
  CLI::App* score = app.add_subcommand(
      "score", "error rate tables and figure data");
  CLI::App* nlu = app.add_subcommand(
      "nlu", "intent classification on decoded transcripts");
  CLI::App* summary = app.add_subcommand(
      "summary", "collect the headline numbers into summary.json");
  CLI::App* report = app.add_subcommand(
      "report", "run every stage in order");
  CLI::App* init_config = app.add_subcommand(
      "init-config", "write the effective run configuration as JSON");

  std::string decode_set = "default";
  decode
      ->add_option("--set", decode_set,
                   "decoder settings and corpus: default, tuned, or fluent")
      ->check(CLI::IsMember({"default", "tuned", "fluent"}));
  std::string init_path = "run.json";
  init_config->add_option("path", init_path, "destination file");

  for (CLI::App* sub : {gen, train_lm, tune, decode, severity, score, nlu,
                        summary, report, init_config}) {
    AddCommonOptions(sub, &cli);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  const CLI::App* sub = app.get_subcommands().front();
  try {
    const stutterlab::RunConfig config = ResolveConfig(sub, cli);
    if (sub == gen) {
      stutterlab::StageGen(config);
    } else if (sub == train_lm) {
      stutterlab::StageTrainLm(config);
    } else if (sub == tune) {
      stutterlab::StageTune(config);
    } else if (sub == decode) {
      stutterlab::DecodePass pass = stutterlab::DecodePass::kDefault;
      if (decode_set == "tuned") pass = stutterlab::DecodePass::kTuned;
      if (decode_set == "fluent") pass = stutterlab::DecodePass::kFluent;
      stutterlab::StageDecode(config, pass);
    } else if (sub == severity) {
      stutterlab::StageSeverity(config);
    } else if (sub == score) {
      stutterlab::StageScore(config);
    } else if (sub == nlu) {
      stutterlab::StageNlu(config);
    } else if (sub == summary) {
      stutterlab::StageSummary(config);
    } else if (sub == report) {
      stutterlab::RunPipeline(config);
    } else if (sub == init_config) {
      stutterlab::SaveRunConfig(config, init_path);
    }
  } catch (const std::exception& e) {
    std::cerr << "stutterlab: " << sub->get_name() << ": " << e.what()
              << "\n";
    return 2;
  }
  return 0;
}
