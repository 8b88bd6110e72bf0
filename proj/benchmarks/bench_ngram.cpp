// bench_ngram.cpp
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
// Language model training and query throughput on the template bank.

#include <benchmark/benchmark.h>

#include <cstddef>
#include <cstdint>
#include <vector>

#include "stutterlab/corpus.hpp"
#include "stutterlab/ngram.hpp"
#include "stutterlab/template_bank.hpp"
#include "stutterlab/tokens.hpp"

namespace stutterlab {
namespace {

std::vector<TokenSeq> TemplateSentences() {
  std::vector<TokenSeq> sentences;
  for (const auto& tpl : BuiltinTemplates()) sentences.push_back(tpl.tokens);
  return sentences;
}

void BM_NGramTrain(benchmark::State& state) {
  const std::vector<TokenSeq> base = TemplateSentences();
  std::vector<TokenSeq> corpus;
  while (static_cast<std::int64_t>(corpus.size()) < state.range(0)) {
    corpus.insert(corpus.end(), base.begin(), base.end());
  }
  corpus.resize(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(NGramModel::Train(corpus));
  }
  state.SetItemsProcessed(
      static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_NGramTrain)->Arg(54)->Arg(540)->Arg(5400);

void BM_NGramSequenceLogProb(benchmark::State& state) {
  const std::vector<TokenSeq> sentences = TemplateSentences();
  const NGramModel model = NGramModel::Train(sentences);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        model.SequenceLogProb(sentences[i++ % sentences.size()]));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}
BENCHMARK(BM_NGramSequenceLogProb);

void BM_NGramPerplexity(benchmark::State& state) {
  const std::vector<TokenSeq> sentences = TemplateSentences();
  const NGramModel model = NGramModel::Train(sentences);
  for (auto _ : state) {
    benchmark::DoNotOptimize(model.Perplexity(sentences));
  }
}
BENCHMARK(BM_NGramPerplexity);

}  // namespace
}  // namespace stutterlab

BENCHMARK_MAIN();
