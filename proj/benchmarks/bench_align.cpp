// bench_align.cpp
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
// Alignment throughput on synthetic reference/hypothesis pairs.

#include <benchmark/benchmark.h>

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "stutterlab/rng.hpp"
#include "stutterlab/scoring.hpp"
#include "stutterlab/tokens.hpp"

namespace stutterlab {
namespace {

const std::vector<Token>& Words() {
  static const std::vector<Token> words = {
      "alpha", "bravo",  "charlie", "delta", "echo",
      "fox",   "golf",   "hotel",   "india", "juliet"};
  return words;
}

Token RandomWord(Rng& rng) {
  const auto& words = Words();
  return words[static_cast<std::size_t>(
      rng.UniformInt(0, static_cast<int>(words.size()) - 1))];
}

// A reference of `len` words and a hypothesis with roughly 15% edits.
std::pair<TokenSeq, TokenSeq> MakePair(int len, Rng& rng) {
  TokenSeq ref;
  TokenSeq hyp;
  for (int i = 0; i < len; ++i) {
    const Token word = RandomWord(rng);
    ref.push_back(word);
    const double u = rng.Uniform();
    if (u < 0.05) continue;  // deletion
    hyp.push_back(u < 0.10 ? RandomWord(rng) : word);
    if (u > 0.95) hyp.push_back(RandomWord(rng));  // insertion
  }
  return {std::move(ref), std::move(hyp)};
}

void BM_AlignTokens(benchmark::State& state) {
  Rng rng(1234);
  std::vector<std::pair<TokenSeq, TokenSeq>> pairs;
  for (int i = 0; i < 64; ++i) {
    pairs.push_back(MakePair(static_cast<int>(state.range(0)), rng));
  }
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& [ref, hyp] = pairs[i++ % pairs.size()];
    benchmark::DoNotOptimize(AlignTokens(ref, hyp));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}
BENCHMARK(BM_AlignTokens)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void BM_PooledErrorRates(benchmark::State& state) {
  Rng rng(5678);
  std::vector<Alignment> alignments;
  for (int i = 0; i < 512; ++i) {
    const auto [ref, hyp] = MakePair(12, rng);
    alignments.push_back(AlignTokens(ref, hyp));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(PooledErrorRates(alignments));
  }
}
BENCHMARK(BM_PooledErrorRates);

}  // namespace
}  // namespace stutterlab

BENCHMARK_MAIN();
