// bench_decode.cpp
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
// Beam-search throughput on simulated emissions at several beam widths.

#include <benchmark/benchmark.h>

#include <cstddef>
#include <cstdint>
#include <vector>

#include "stutterlab/amsim.hpp"
#include "stutterlab/corpus.hpp"
#include "stutterlab/decoder.hpp"
#include "stutterlab/ngram.hpp"
#include "stutterlab/rng.hpp"
#include "stutterlab/template_bank.hpp"
#include "stutterlab/tokens.hpp"

namespace stutterlab {
namespace {

struct DecodeFixture {
  NGramModel lm;
  std::vector<EmissionSequence> emissions;
};

const DecodeFixture& Fixture() {
  static const DecodeFixture* fixture = [] {
    CorpusOptions options;
    options.utterances_per_speaker = 2;
    options.master_seed = 5;
    const std::vector<Utterance> corpus =
        GenerateCorpus(BuiltinTemplates(), DefaultSpeakers(5), options);
    std::vector<TokenSeq> sentences;
    for (const auto& tpl : BuiltinTemplates()) sentences.push_back(tpl.tokens);
    auto* f = new DecodeFixture{NGramModel::Train(sentences), {}};
    const std::vector<Token> pool = BuildDistractorPool(corpus);
    const ConfusionModel model;
    for (const auto& utt : corpus) {
      Rng rng(MixSeed(5, utt.id));
      f->emissions.push_back(SimulateEmissions(utt, model, pool, rng));
    }
    return f;
  }();
  return *fixture;
}

void BM_Decode(benchmark::State& state) {
  const DecodeFixture& fixture = Fixture();
  DecoderConfig config;
  config.beam_width = static_cast<int>(state.range(0));
  std::size_t i = 0;
  std::int64_t steps = 0;
  for (auto _ : state) {
    const EmissionSequence& seq =
        fixture.emissions[i++ % fixture.emissions.size()];
    steps += static_cast<std::int64_t>(seq.steps.size());
    benchmark::DoNotOptimize(Decode(seq, fixture.lm, config));
  }
  // Items are emission steps, the unit the beam loop iterates over.
  state.SetItemsProcessed(steps);
}
BENCHMARK(BM_Decode)->Arg(4)->Arg(16)->Arg(64);

}  // namespace
}  // namespace stutterlab

BENCHMARK_MAIN();
