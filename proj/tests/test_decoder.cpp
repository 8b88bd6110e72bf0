// test_decoder.cpp
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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "decode_harness.hpp"
#include "stutterlab/decoder.hpp"
#include "stutterlab/ngram.hpp"
#include "stutterlab/rng.hpp"
#include "stutterlab/tokens.hpp"
#include "stutterlab/vocab.hpp"

namespace stutterlab {

TEST_SUITE("decoder") {

TEST_CASE("config validation rejects nonsense") {
  DecoderConfig config;
  CHECK_NOTHROW(config.Validate());
  config.am_weight = 0.0;
  CHECK_THROWS_AS(config.Validate(), std::invalid_argument);
  config = DecoderConfig{};
  config.insertion_penalty = -0.1;
  CHECK_THROWS_AS(config.Validate(), std::invalid_argument);
  config = DecoderConfig{};
  config.beam_width = 0;
  CHECK_THROWS_AS(config.Validate(), std::invalid_argument);
  config = DecoderConfig{};
  config.pruning_threshold = 0.0;
  CHECK_THROWS_AS(config.Validate(), std::invalid_argument);
  config = DecoderConfig{};
  config.lattice_beam = 0.0;
  CHECK_THROWS_AS(config.Validate(), std::invalid_argument);
  config = DecoderConfig{};
  config.nbest = 0;
  CHECK_THROWS_AS(config.Validate(), std::invalid_argument);
}

TEST_CASE("steps without exactly one epsilon are rejected") {
  const NGramModel lm = NGramModel::Train({{"one"}});
  EmissionSequence seq;
  seq.steps.push_back(MakeStep({{"one", 1.0}}));
  CHECK_THROWS_AS(Decode(seq, lm, DecoderConfig{}), std::invalid_argument);
}

TEST_CASE("one best matches exhaustive enumeration") {
  int instances = 0;
  for (std::uint64_t seed = 1; instances < 200; ++seed) {
    Rng rng(seed);
    const RandomInstance instance = MakeRandomInstance(rng);
    ++instances;
    const std::map<TokenSeq, double> oracle = EnumerateTranscripts(
        instance.emissions, instance.lm, instance.config);
    const double best = OracleBest(oracle);
    const std::vector<Hypothesis> hyps =
        Decode(instance.emissions, instance.lm, instance.config);
    REQUIRE(!hyps.empty());
    // The decoder's winner carries the oracle's best score, and its own
    // bookkeeping agrees with the enumeration for that transcript.
    REQUIRE(std::abs(hyps[0].combined_score - best) < 1e-9);
    REQUIRE(oracle.count(hyps[0].tokens) == 1);
    REQUIRE(std::abs(oracle.at(hyps[0].tokens) - hyps[0].combined_score) <
            1e-9);
    // Every returned hypothesis reproduces the score identity.
    for (const auto& hyp : hyps) {
      CHECK(hyp.combined_score ==
            doctest::Approx(CombinedScore(hyp.am_logscore, hyp.lm_logscore,
                                          hyp.tokens.size(), instance.config))
                .epsilon(1e-12));
    }
  }
}

TEST_CASE("nbest is sorted, bounded, and within the lattice beam") {
  Rng rng(4242);
  for (int iter = 0; iter < 50; ++iter) {
    RandomInstance instance = MakeRandomInstance(rng);
    instance.config.lattice_beam = 8.0;
    instance.config.nbest = 3;
    const std::vector<Hypothesis> hyps =
        Decode(instance.emissions, instance.lm, instance.config);
    REQUIRE(!hyps.empty());
    CHECK(static_cast<int>(hyps.size()) <= instance.config.nbest);
    for (std::size_t i = 1; i < hyps.size(); ++i) {
      CHECK(hyps[i - 1].combined_score >= hyps[i].combined_score);
      CHECK(hyps[0].combined_score - hyps[i].combined_score <=
            instance.config.lattice_beam);
    }
  }
}

TEST_CASE("ties break toward the lexicographically smaller transcript") {
  // Symmetric corpus and symmetric scores: "apple" and "pear" tie exactly.
  const NGramModel lm = NGramModel::Train({{"apple"}, {"pear"}});
  EmissionSequence seq;
  seq.steps.push_back(
      MakeStep({{"pear", 3.0}, {"apple", 3.0}, {kEps, -500.0}}));
  const std::vector<Hypothesis> hyps = Decode(seq, lm, DecoderConfig{});
  REQUIRE(hyps.size() >= 2);
  CHECK(hyps[0].tokens == TokenSeq{"apple"});
  CHECK(hyps[0].combined_score ==
        doctest::Approx(hyps[1].combined_score).epsilon(1e-12));
}

TEST_CASE("raising the insertion penalty never lengthens the one best") {
  Rng rng(777);
  for (int iter = 0; iter < 1000; ++iter) {
    RandomInstance instance = MakeRandomInstance(rng, 5);
    instance.config.insertion_penalty = 0.0;
    const auto loose = Decode(instance.emissions, instance.lm,
                              instance.config);
    instance.config.insertion_penalty = 2.0;
    const auto tight = Decode(instance.emissions, instance.lm,
                              instance.config);
    CHECK(tight[0].tokens.size() <= loose[0].tokens.size());
  }
}

TEST_CASE("widening the beam never hurts the winner") {
  Rng rng(778);
  for (int iter = 0; iter < 1000; ++iter) {
    RandomInstance instance = MakeRandomInstance(rng, 5);
    instance.config.beam_width = 1;
    const auto narrow = Decode(instance.emissions, instance.lm,
                               instance.config);
    instance.config.beam_width = 64;
    const auto wide = Decode(instance.emissions, instance.lm,
                             instance.config);
    CHECK(wide[0].combined_score >= narrow[0].combined_score - 1e-12);
  }
}

TEST_CASE("loosening the pruning threshold never hurts the winner") {
  Rng rng(779);
  for (int iter = 0; iter < 1000; ++iter) {
    RandomInstance instance = MakeRandomInstance(rng, 5);
    instance.config.beam_width = 64;
    instance.config.pruning_threshold = 0.5;
    const auto tight = Decode(instance.emissions, instance.lm,
                              instance.config);
    instance.config.pruning_threshold = 90.0;
    const auto loose = Decode(instance.emissions, instance.lm,
                              instance.config);
    CHECK(loose[0].combined_score >= tight[0].combined_score - 1e-12);
  }
}

TEST_CASE("a constructed repetition flips with the tuned weights") {
  // Eight steps spell "what is my brothers add- add- add- address"; the
  // three partial steps carry a margin placed so that the default weights
  // keep at least one partial while the tuned weights drop them all.
  const TokenSeq base = SplitWhitespace("what is my brothers address");
  const NGramModel lm = NGramModel::Train({base});

  DecoderConfig wide;
  wide.am_weight = 1.0 / 15.0;
  wide.insertion_penalty = 0.0;
  wide.beam_width = 4096;
  wide.pruning_threshold = 1e9;
  wide.lattice_beam = 1e9;
  wide.nbest = 1;
  DecoderConfig tuned = wide;
  tuned.am_weight = 1.0 / 30.0;
  tuned.insertion_penalty = 1.0;

  // Language model cost of inserting k partials between "brothers" and
  // "address", relative to the clean transcript.
  const double clean_lm = lm.SequenceLogProb(base);
  auto lm_cost = [&](int k) {
    TokenSeq with = base;
    with.insert(with.begin() + 4, static_cast<std::size_t>(k), "add-");
    return clean_lm - lm.SequenceLogProb(with);
  };
  double keep_bound = 1e300, drop_bound = 1e300;
  for (int k = 1; k <= 3; ++k) {
    keep_bound = std::min(keep_bound, 15.0 * lm_cost(k) / k);
    drop_bound = std::min(drop_bound, 30.0 * (lm_cost(k) / k + 1.0));
  }
  REQUIRE(keep_bound < drop_bound);
  const double margin = 0.5 * (keep_bound + drop_bound);

  EmissionSequence seq;
  auto real_step = [](const Token& word) {
    return MakeStep({{word, 480.0}, {kEps, 0.0}});
  };
  seq.steps.push_back(real_step("what"));
  seq.steps.push_back(real_step("is"));
  seq.steps.push_back(real_step("my"));
  seq.steps.push_back(real_step("brothers"));
  for (int k = 0; k < 3; ++k) {
    seq.steps.push_back(MakeStep({{"add-", margin}, {kEps, 0.0}}));
  }
  seq.steps.push_back(real_step("address"));

  const auto kept = Decode(seq, lm, wide);
  const auto dropped = Decode(seq, lm, tuned);
  const long partials_kept = std::count(kept[0].tokens.begin(),
                                        kept[0].tokens.end(), Token("add-"));
  CHECK(partials_kept >= 1);
  CHECK(dropped[0].tokens == base);

  // The same outcome falls out of exhaustive enumeration.
  for (const DecoderConfig& config : {wide, tuned}) {
    const auto oracle = EnumerateTranscripts(seq, lm, config);
    const auto hyps = Decode(seq, lm, config);
    CHECK(std::abs(OracleBest(oracle) - hyps[0].combined_score) < 1e-9);
  }
}

}  // TEST_SUITE

}  // namespace stutterlab
