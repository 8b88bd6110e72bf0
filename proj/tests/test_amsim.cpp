// test_amsim.cpp
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
#include <set>
#include <vector>

#include "stutterlab/amsim.hpp"
#include "stutterlab/corpus.hpp"
#include "stutterlab/template_bank.hpp"
#include "stutterlab/tokens.hpp"
#include "stutterlab/vocab.hpp"

namespace stutterlab {
namespace {

std::vector<Utterance> SmallCorpus(std::uint64_t seed) {
  CorpusOptions options;
  options.utterances_per_speaker = 4;
  options.master_seed = seed;
  return GenerateCorpus(BuiltinTemplates(), DefaultSpeakers(seed), options);
}

const Token& ArgmaxToken(const EmissionStep& step) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < step.candidates.size(); ++i) {
    if (step.candidates[i].second > step.candidates[best].second) best = i;
  }
  return step.candidates[best].first;
}

}  // namespace

TEST_SUITE("amsim") {

TEST_CASE("distractor pool is the sorted realized vocabulary") {
  const auto corpus = SmallCorpus(41);
  const auto pool = BuildDistractorPool(corpus);
  CHECK(std::is_sorted(pool.begin(), pool.end()));
  CHECK(std::adjacent_find(pool.begin(), pool.end()) == pool.end());
  std::set<Token> seen;
  for (const auto& utt : corpus) {
    seen.insert(utt.realized.begin(), utt.realized.end());
  }
  CHECK(pool.size() == seen.size());
}

TEST_CASE("every step has exactly one epsilon and the spoken token") {
  const auto corpus = SmallCorpus(42);
  const auto pool = BuildDistractorPool(corpus);
  const ConfusionModel model;
  Rng rng(1);
  for (std::size_t u = 0; u < 20; ++u) {
    const Utterance& utt = corpus[u];
    const EmissionSequence seq = SimulateEmissions(utt, model, pool, rng);
    const std::vector<StepPlan> plan =
        BuildStepPlan(utt.realized, utt.events);
    REQUIRE(seq.steps.size() == plan.size());
    for (std::size_t s = 0; s < seq.steps.size(); ++s) {
      const EmissionStep& step = seq.steps[s];
      CHECK(step.hold == plan[s].hold);
      CHECK(step.dysfluent == plan[s].dysfluent);
      CHECK(step.realized_index == plan[s].realized_index);
      CHECK(static_cast<int>(step.candidates.size()) <=
            model.top_k_candidates);
      int eps_count = 0;
      bool has_spoken = false;
      std::set<Token> unique;
      const Token& spoken =
          utt.realized[static_cast<std::size_t>(step.realized_index)];
      for (const auto& [token, score] : step.candidates) {
        if (token == kEps) ++eps_count;
        if (token == spoken) has_spoken = true;
        unique.insert(token);
      }
      CHECK(eps_count == 1);
      CHECK(has_spoken);
      CHECK(unique.size() == step.candidates.size());
    }
  }
}

TEST_CASE("without noise the argmax path is the realized transcript") {
  const auto corpus = SmallCorpus(43);
  const auto pool = BuildDistractorPool(corpus);
  ConfusionModel model;
  model.confusion_spread = 0.0;
  Rng rng(2);
  for (std::size_t u = 0; u < 30; ++u) {
    const Utterance& utt = corpus[u];
    const EmissionSequence seq = SimulateEmissions(utt, model, pool, rng);
    TokenSeq greedy;
    for (const auto& step : seq.steps) {
      const Token& top = ArgmaxToken(step);
      if (step.hold) {
        CHECK(top == kEps);
      } else {
        CHECK(top ==
              utt.realized[static_cast<std::size_t>(step.realized_index)]);
      }
      if (top != kEps) greedy.push_back(top);
    }
    CHECK(greedy == utt.realized);
  }
}

TEST_CASE("stronger degradation weakens the spoken margin") {
  const auto corpus = SmallCorpus(44);
  const auto pool = BuildDistractorPool(corpus);
  ConfusionModel mild, harsh;
  mild.confusion_spread = 0.0;
  harsh.confusion_spread = 0.0;
  mild.dysfluent_degradation = 0.2;
  harsh.dysfluent_degradation = 0.6;
  int compared = 0;
  for (std::size_t u = 0; u < corpus.size() && compared < 50; ++u) {
    Rng ra(9), rb(9);
    const EmissionSequence a = SimulateEmissions(corpus[u], mild, pool, ra);
    const EmissionSequence b = SimulateEmissions(corpus[u], harsh, pool, rb);
    for (std::size_t s = 0; s < a.steps.size(); ++s) {
      if (!a.steps[s].dysfluent || a.steps[s].hold) continue;
      CHECK(a.steps[s].candidates[0].second >
            b.steps[s].candidates[0].second);
      ++compared;
    }
  }
  CHECK(compared >= 50);
}

TEST_CASE("epsilon wins dysfluent frames far more often than clean ones") {
  // Small scale model so the margins are close enough for noise to matter.
  ConfusionModel model;
  model.correct_logit_mean = 12.0;
  model.confusion_spread = 3.0;
  model.dysfluent_degradation = 0.4;
  model.epsilon_boost = 2.0;
  model.top_k_candidates = 4;

  Utterance utt;
  utt.id = "mc";
  utt.speaker_id = "mc";
  utt.template_id = "mc";
  utt.grade = Grade::kG2;
  utt.intended = {"alpha", "beta"};
  utt.realized = {"alpha", "alpha", "beta"};
  DysfluencyEvent event;
  event.kind = DysfluencyKind::kWordRepetition;
  event.start = 1;
  event.end = 2;
  event.anchor = 1;
  utt.events = {event};
  const std::vector<Token> pool = {"alpha", "beta", "gamma", "delta"};

  Rng rng(123);
  int clean_eps = 0, dys_eps = 0, clean_n = 0, dys_n = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const EmissionSequence seq = SimulateEmissions(utt, model, pool, rng);
    for (const auto& step : seq.steps) {
      const bool eps_top = ArgmaxToken(step) == kEps;
      if (step.dysfluent) {
        ++dys_n;
        dys_eps += eps_top ? 1 : 0;
      } else {
        ++clean_n;
        clean_eps += eps_top ? 1 : 0;
      }
    }
  }
  REQUIRE(clean_n == 2 * dys_n);
  const double clean_rate = static_cast<double>(clean_eps) / clean_n;
  const double dys_rate = static_cast<double>(dys_eps) / dys_n;
  CHECK(dys_rate > 5.0 * clean_rate);
  CHECK(dys_rate > 0.02);
}

TEST_CASE("emissions are deterministic in the stream seed") {
  const auto corpus = SmallCorpus(45);
  const auto pool = BuildDistractorPool(corpus);
  const ConfusionModel model;
  Rng ra(55), rb(55);
  const EmissionSequence a = SimulateEmissions(corpus[0], model, pool, ra);
  const EmissionSequence b = SimulateEmissions(corpus[0], model, pool, rb);
  REQUIRE(a.steps.size() == b.steps.size());
  for (std::size_t s = 0; s < a.steps.size(); ++s) {
    REQUIRE(a.steps[s].candidates.size() == b.steps[s].candidates.size());
    for (std::size_t c = 0; c < a.steps[s].candidates.size(); ++c) {
      CHECK(a.steps[s].candidates[c].first == b.steps[s].candidates[c].first);
      CHECK(a.steps[s].candidates[c].second ==
            b.steps[s].candidates[c].second);
    }
  }
}

}  // TEST_SUITE

}  // namespace stutterlab
