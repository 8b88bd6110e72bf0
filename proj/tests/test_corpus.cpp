// test_corpus.cpp
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
#include <filesystem>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "stutterlab/corpus.hpp"
#include "stutterlab/template_bank.hpp"
#include "stutterlab/tokens.hpp"

namespace stutterlab {
namespace {

std::map<std::string, const QueryTemplate*> TemplateIndex() {
  std::map<std::string, const QueryTemplate*> index;
  for (const auto& tpl : BuiltinTemplates()) index[tpl.id] = &tpl;
  return index;
}

std::vector<Utterance> SmallCorpus(std::uint64_t seed, bool fluent = false) {
  CorpusOptions options;
  options.utterances_per_speaker = 6;
  options.master_seed = seed;
  options.fluent = fluent;
  return GenerateCorpus(BuiltinTemplates(), DefaultSpeakers(seed), options);
}

}  // namespace

TEST_SUITE("corpus") {

TEST_CASE("grade bands and names") {
  CHECK(BandOfGrade(Grade::kG1).lo == doctest::Approx(0.01));
  CHECK(BandOfGrade(Grade::kG1).hi == doctest::Approx(0.05));
  CHECK(BandOfGrade(Grade::kG2).lo == doctest::Approx(0.06));
  CHECK(BandOfGrade(Grade::kG2).hi == doctest::Approx(0.20));
  CHECK(BandOfGrade(Grade::kG3).lo == doctest::Approx(0.21));
  CHECK(BandOfGrade(Grade::kG3).hi == doctest::Approx(1.00));
  for (Grade g : {Grade::kG1, Grade::kG2, Grade::kG3}) {
    CHECK(ParseGrade(GradeName(g)) == g);
  }
  CHECK_THROWS_AS(ParseGrade("G4"), std::invalid_argument);
}

TEST_CASE("dysfluency kind names round trip") {
  for (int k = 0; k < kNumDysfluencyKinds; ++k) {
    const auto kind = static_cast<DysfluencyKind>(k);
    CHECK(ParseKind(KindName(kind)) == kind);
  }
  CHECK(IsHoldKind(DysfluencyKind::kBlock));
  CHECK(IsHoldKind(DysfluencyKind::kProlongation));
  CHECK_FALSE(IsHoldKind(DysfluencyKind::kSoundRepetition));
  CHECK_FALSE(IsHoldKind(DysfluencyKind::kFiller));
}

TEST_CASE("builtin template bank shape") {
  const auto& templates = BuiltinTemplates();
  CHECK(templates.size() == 54);
  std::set<std::string> ids, intents, domains;
  std::map<std::string, int> per_domain;
  for (const auto& tpl : templates) {
    ids.insert(tpl.id);
    intents.insert(tpl.intent);
    domains.insert(tpl.domain);
    per_domain[tpl.domain] += 1;
    CHECK(tpl.tokens.size() >= 6);
    CHECK(tpl.tokens.size() <= 12);
    CHECK(tpl.intent.rfind(tpl.domain + ".", 0) == 0);
    for (const auto& token : tpl.tokens) {
      CHECK(NormalizeToken(token) == token);
    }
  }
  CHECK(ids.size() == 54);
  CHECK(intents.size() == 54);
  CHECK(domains.size() == 6);
  for (const auto& [domain, count] : per_domain) CHECK(count == 9);
  CHECK(BuiltinOutOfDomainSentences().size() == 30);
}

TEST_CASE("default speaker panel") {
  const auto speakers = DefaultSpeakers(7);
  CHECK(speakers.size() == 18);
  std::map<Grade, int> per_grade;
  std::set<std::string> ids;
  for (const auto& sp : speakers) {
    per_grade[sp.grade] += 1;
    ids.insert(sp.id);
    const GradeBand band = BandOfGrade(sp.grade);
    CHECK(sp.dysfluent_word_fraction >= band.lo);
    CHECK(sp.dysfluent_word_fraction <= band.hi);
    double weight_sum = 0.0;
    for (const auto& [kind, w] : sp.pattern_weights) {
      CHECK(w >= 0.0);
      weight_sum += w;
    }
    CHECK(weight_sum > 0.0);
  }
  CHECK(ids.size() == 18);
  CHECK(per_grade[Grade::kG1] == 6);
  CHECK(per_grade[Grade::kG2] == 7);
  CHECK(per_grade[Grade::kG3] == 5);
}

TEST_CASE("generated utterances recover their intended text") {
  const auto corpus = SmallCorpus(21);
  const auto index = TemplateIndex();
  REQUIRE(corpus.size() == 18 * 6);
  for (const auto& utt : corpus) {
    CHECK(RecoverIntended(utt) == utt.intended);
    REQUIRE(index.count(utt.template_id) == 1);
    CHECK(utt.intended == index.at(utt.template_id)->tokens);
    CHECK_NOTHROW(ValidateUtterance(utt));
  }
}

TEST_CASE("event counts respect the grade band window") {
  const auto corpus = SmallCorpus(22);
  for (const auto& utt : corpus) {
    const int length = static_cast<int>(utt.intended.size());
    const GradeBand band = BandOfGrade(utt.grade);
    const int lo =
        std::max(1, static_cast<int>(std::ceil(band.lo * length)) - 1);
    const int hi = std::min(
        length, static_cast<int>(std::floor(band.hi * length)) + 1);
    const int count = static_cast<int>(utt.events.size());
    CHECK(count >= lo);
    CHECK(count <= hi);
    const double fraction = static_cast<double>(count) / length;
    const double slack = 1.0 / length;
    CHECK(fraction >= band.lo - slack);
    CHECK(fraction <= band.hi + slack);
  }
}

TEST_CASE("event spans carry the right junk per kind") {
  const auto corpus = SmallCorpus(23);
  long mask_total = 0, span_total = 0;
  for (const auto& utt : corpus) {
    for (const auto& event : utt.events) {
      const Token& anchor_word =
          utt.intended[static_cast<std::size_t>(event.anchor)];
      const TokenSeq junk(
          utt.realized.begin() + event.start,
          utt.realized.begin() + event.end);
      switch (event.kind) {
        case DysfluencyKind::kBlock:
          CHECK(junk.empty());
          CHECK(event.extra_steps >= 1);
          CHECK(event.extra_steps <= 2);
          break;
        case DysfluencyKind::kProlongation:
          CHECK(junk.empty());
          CHECK(event.extra_steps >= 1);
          CHECK(event.extra_steps <= 3);
          break;
        case DysfluencyKind::kSoundRepetition:
          REQUIRE(!junk.empty());
          for (const auto& token : junk) {
            CHECK(token == PartialOf(anchor_word));
          }
          break;
        case DysfluencyKind::kWordRepetition:
          CHECK(junk == TokenSeq{anchor_word});
          break;
        case DysfluencyKind::kPhraseRepetition: {
          REQUIRE(!junk.empty());
          // The junk is some whole number of copies of the phrase that
          // follows the anchor.
          bool explained = false;
          for (int len = 1; len <= 4 && !explained; ++len) {
            if (junk.size() % static_cast<std::size_t>(len) != 0) continue;
            const int reps = static_cast<int>(junk.size()) / len;
            if (reps < 1 || reps > 4) continue;
            TokenSeq phrase;
            for (int i = 0; i < len; ++i) {
              const std::size_t pos =
                  static_cast<std::size_t>(event.anchor + i);
              if (pos >= utt.intended.size()) break;
              phrase.push_back(utt.intended[pos]);
            }
            if (static_cast<int>(phrase.size()) != len) continue;
            TokenSeq rebuilt;
            for (int r = 0; r < reps; ++r) {
              rebuilt.insert(rebuilt.end(), phrase.begin(), phrase.end());
            }
            explained = rebuilt == junk;
          }
          CHECK(explained);
          break;
        }
        case DysfluencyKind::kFiller:
          REQUIRE(!junk.empty());
          CHECK(junk.size() <= 2);
          for (const auto& token : junk) {
            CHECK((token == "um" || token == "uh" || token == "ah"));
          }
          break;
        case DysfluencyKind::kRevision: {
          REQUIRE(!junk.empty());
          // An abandoned start of the same phrase.
          for (std::size_t i = 0; i < junk.size(); ++i) {
            CHECK(junk[i] ==
                  utt.intended[static_cast<std::size_t>(event.anchor) + i]);
          }
          break;
        }
      }
      if (!IsHoldKind(event.kind)) {
        span_total += event.end - event.start;
      } else {
        span_total += event.extra_steps;
      }
    }
    const std::vector<StepPlan> plan =
        BuildStepPlan(utt.realized, utt.events);
    REQUIRE(utt.frame_mask.size() == plan.size());
    for (std::uint8_t bit : utt.frame_mask) mask_total += bit;
  }
  // Dysfluent steps are exactly the junk tokens plus the hold stalls.
  CHECK(mask_total == span_total);
}

TEST_CASE("phrase repetitions loop hard enough to matter") {
  SpeakerProfile profile;
  profile.id = "loop";
  profile.grade = Grade::kG3;
  profile.dysfluent_word_fraction = 0.3;
  profile.pattern_weights = {{DysfluencyKind::kPhraseRepetition, 1.0}};
  const TokenSeq intended =
      SplitWhitespace("can you share my location with my wife for an hour");
  InjectionOptions options;
  Rng rng(5);
  std::size_t longest = 0;
  for (int iter = 0; iter < 200; ++iter) {
    const InjectionResult result =
        InjectDysfluencies(intended, profile, options, rng);
    for (const auto& event : result.events) {
      longest = std::max(
          longest, static_cast<std::size_t>(event.end - event.start));
    }
  }
  // With up to four repeats of a phrase of up to four words, long loops
  // must show up; they are what pushes severe decodes into garbage.
  CHECK(longest >= 8);
  CHECK(longest <= 16);
}

TEST_CASE("generation is deterministic in the master seed") {
  const auto a = SmallCorpus(33);
  const auto b = SmallCorpus(33);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].id == b[i].id);
    CHECK(a[i].realized == b[i].realized);
    CHECK(a[i].frame_mask == b[i].frame_mask);
  }
  const auto c = SmallCorpus(34);
  bool any_different = false;
  for (std::size_t i = 0; i < a.size() && !any_different; ++i) {
    any_different = a[i].realized != c[i].realized;
  }
  CHECK(any_different);
}

TEST_CASE("fluent twin reads the same prompts cleanly") {
  const auto dys = SmallCorpus(35);
  const auto flu = SmallCorpus(35, true);
  REQUIRE(dys.size() == flu.size());
  for (std::size_t i = 0; i < dys.size(); ++i) {
    CHECK(flu[i].id == dys[i].id);
    CHECK(flu[i].template_id == dys[i].template_id);
    CHECK(flu[i].realized == flu[i].intended);
    CHECK(flu[i].events.empty());
    for (std::uint8_t bit : flu[i].frame_mask) CHECK(bit == 0);
  }
}

TEST_CASE("a seeded profile reproduces the canonical repetition pattern") {
  const TokenSeq intended =
      SplitWhitespace("who was the first person to walk on the moon");
  const TokenSeq target = SplitWhitespace(
      "who who was the first per- person to walk on the moon");
  SpeakerProfile profile;
  profile.id = "fixture";
  profile.grade = Grade::kG3;
  profile.dysfluent_word_fraction = 0.21;
  profile.pattern_weights = {{DysfluencyKind::kWordRepetition, 0.5},
                             {DysfluencyKind::kSoundRepetition, 0.5}};
  const InjectionOptions options;
  bool found = false;
  for (std::uint64_t seed = 0; seed < 200000 && !found; ++seed) {
    Rng rng(seed);
    const InjectionResult result =
        InjectDysfluencies(intended, profile, options, rng);
    if (result.realized == target) {
      found = true;
      REQUIRE(result.events.size() == 2);
      CHECK(result.events[0].kind == DysfluencyKind::kWordRepetition);
      CHECK(result.events[0].anchor == 0);
      CHECK(result.events[1].kind == DysfluencyKind::kSoundRepetition);
      CHECK(result.events[1].anchor == 4);
    }
  }
  CHECK(found);
}

TEST_CASE("save and load round trip") {
  const auto corpus = SmallCorpus(36);
  const std::string path =
      (std::filesystem::temp_directory_path() / "stutterlab_corpus_rt.jsonl")
          .string();
  SaveCorpus(corpus, path);
  const auto loaded = LoadCorpus(path);
  std::filesystem::remove(path);
  REQUIRE(loaded.size() == corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    CHECK(loaded[i].id == corpus[i].id);
    CHECK(loaded[i].speaker_id == corpus[i].speaker_id);
    CHECK(loaded[i].template_id == corpus[i].template_id);
    CHECK(loaded[i].grade == corpus[i].grade);
    CHECK(loaded[i].intended == corpus[i].intended);
    CHECK(loaded[i].realized == corpus[i].realized);
    CHECK(loaded[i].frame_mask == corpus[i].frame_mask);
    REQUIRE(loaded[i].events.size() == corpus[i].events.size());
    for (std::size_t e = 0; e < corpus[i].events.size(); ++e) {
      CHECK(loaded[i].events[e].kind == corpus[i].events[e].kind);
      CHECK(loaded[i].events[e].start == corpus[i].events[e].start);
      CHECK(loaded[i].events[e].end == corpus[i].events[e].end);
      CHECK(loaded[i].events[e].anchor == corpus[i].events[e].anchor);
      CHECK(loaded[i].events[e].extra_steps ==
            corpus[i].events[e].extra_steps);
    }
  }
}

}  // TEST_SUITE

}  // namespace stutterlab
