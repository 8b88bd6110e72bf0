// corpus.cpp
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

#include "stutterlab/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace stutterlab {

namespace {

const char* const kKindNames[kNumDysfluencyKinds] = {
    "block",           "prolongation",      "sound_repetition",
    "word_repetition", "phrase_repetition", "filler",
    "revision"};

const char* const kFillerWords[] = {"um", "uh", "ah"};

bool HasBiasedOnset(const Token& word) {
  if (word.empty()) return false;
  switch (word[0]) {
    case 't':
    case 'd':
    case 'n':
    case 'r':
    case 's':
      return true;
    default:
      return false;
  }
}

int StochasticRound(double value, Rng& rng) {
  const double floor_value = std::floor(value);
  const double frac = value - floor_value;
  return static_cast<int>(floor_value) + (rng.Uniform() < frac ? 1 : 0);
}

struct PlacedEvent {
  DysfluencyKind kind;
  int anchor;
};

// Sound repetitions pick their anchors first: they carry the initial-word
// bias and prefer t d n r s onsets. Everything else lands uniformly on the
// remaining free positions.
std::vector<PlacedEvent> PlaceEvents(const TokenSeq& intended,
                                     const std::vector<DysfluencyKind>& kinds,
                                     const InjectionOptions& options,
                                     Rng& rng) {
  std::vector<int> free_positions(intended.size());
  for (std::size_t i = 0; i < intended.size(); ++i) {
    free_positions[i] = static_cast<int>(i);
  }
  auto take = [&free_positions](std::size_t idx) {
    const int pos = free_positions[idx];
    free_positions.erase(free_positions.begin() +
                         static_cast<std::ptrdiff_t>(idx));
    return pos;
  };

  std::vector<PlacedEvent> placed;
  placed.reserve(kinds.size());
  for (DysfluencyKind kind : kinds) {
    if (kind != DysfluencyKind::kSoundRepetition) continue;
    int anchor = -1;
    if (rng.Bernoulli(options.sound_rep_initial_bias)) {
      std::vector<std::size_t> early;
      for (std::size_t i = 0; i < free_positions.size(); ++i) {
        if (free_positions[i] <= 1) early.push_back(i);
      }
      if (!early.empty()) {
        anchor = take(early[static_cast<std::size_t>(
            rng.UniformInt(0, static_cast<int>(early.size()) - 1))]);
      }
    }
    if (anchor < 0) {
      std::vector<double> weights(free_positions.size());
      for (std::size_t i = 0; i < free_positions.size(); ++i) {
        const Token& word =
            intended[static_cast<std::size_t>(free_positions[i])];
        weights[i] = HasBiasedOnset(word) ? options.onset_weight : 1.0;
      }
      anchor = take(rng.PickWeighted(weights));
    }
    placed.push_back({kind, anchor});
  }
  for (DysfluencyKind kind : kinds) {
    if (kind == DysfluencyKind::kSoundRepetition) continue;
    const std::size_t idx = static_cast<std::size_t>(
        rng.UniformInt(0, static_cast<int>(free_positions.size()) - 1));
    placed.push_back({kind, take(idx)});
  }
  std::sort(placed.begin(), placed.end(),
            [](const PlacedEvent& a, const PlacedEvent& b) {
              return a.anchor < b.anchor;
            });
  return placed;
}

int MaxSoundReps(Grade grade, const InjectionOptions& options) {
  switch (grade) {
    case Grade::kG1:
      return options.sound_reps_max_g1;
    case Grade::kG2:
      return options.sound_reps_max_g2;
    case Grade::kG3:
      return options.sound_reps_max_g3;
  }
  return 1;
}

int MaxPhraseReps(Grade grade, const InjectionOptions& options) {
  switch (grade) {
    case Grade::kG1:
      return options.phrase_reps_max_g1;
    case Grade::kG2:
      return options.phrase_reps_max_g2;
    case Grade::kG3:
      return options.phrase_reps_max_g3;
  }
  return 1;
}

// Inserted tokens for one event; empty for hold kinds.
TokenSeq JunkTokens(DysfluencyKind kind, const TokenSeq& intended, int anchor,
                    Grade grade, const InjectionOptions& options, Rng& rng) {
  const std::size_t pos = static_cast<std::size_t>(anchor);
  switch (kind) {
    case DysfluencyKind::kBlock:
    case DysfluencyKind::kProlongation:
      return {};
    case DysfluencyKind::kSoundRepetition: {
      const int reps = rng.UniformInt(1, MaxSoundReps(grade, options));
      return TokenSeq(static_cast<std::size_t>(reps),
                      PartialOf(intended[pos]));
    }
    case DysfluencyKind::kWordRepetition:
      return {intended[pos]};
    case DysfluencyKind::kPhraseRepetition: {
      const int max_len = std::min<int>(
          options.phrase_len_max, static_cast<int>(intended.size() - pos));
      const int len =
          max_len <= options.phrase_len_min
              ? max_len
              : rng.UniformInt(options.phrase_len_min, max_len);
      // Severe speakers loop the false start several times before the
      // phrase finally goes through.
      const int reps = rng.UniformInt(1, MaxPhraseReps(grade, options));
      TokenSeq junk;
      for (int r = 0; r < reps; ++r) {
        junk.insert(junk.end(), intended.begin() + anchor,
                    intended.begin() + anchor + std::max(1, len));
      }
      return junk;
    }
    case DysfluencyKind::kFiller: {
      const int count = rng.UniformInt(1, options.filler_tokens_max);
      TokenSeq junk;
      for (int i = 0; i < count; ++i) {
        junk.push_back(kFillerWords[rng.UniformInt(0, 2)]);
      }
      return junk;
    }
    case DysfluencyKind::kRevision: {
      // An abandoned start: the speaker begins the phrase, stops, and
      // starts it over.
      const int max_len = std::min<int>(
          options.revision_len_max, static_cast<int>(intended.size() - pos));
      const int len =
          max_len <= options.revision_len_min
              ? max_len
              : rng.UniformInt(options.revision_len_min, max_len);
      return TokenSeq(intended.begin() + anchor,
                      intended.begin() + anchor + std::max(1, len));
    }
  }
  return {};
}

nlohmann::json UtteranceToJson(const Utterance& utt) {
  nlohmann::json events = nlohmann::json::array();
  for (const auto& e : utt.events) {
    events.push_back({{"kind", KindName(e.kind)},
                      {"start", e.start},
                      {"end", e.end},
                      {"anchor", e.anchor},
                      {"extra_steps", e.extra_steps}});
  }
  nlohmann::json mask = nlohmann::json::array();
  for (std::uint8_t bit : utt.frame_mask) mask.push_back(bit ? 1 : 0);
  // ordered_json keeps this key order on disk.
  nlohmann::ordered_json out;
  out["id"] = utt.id;
  out["speaker_id"] = utt.speaker_id;
  out["template_id"] = utt.template_id;
  out["grade"] = GradeName(utt.grade);
  out["intended"] = utt.intended;
  out["realized"] = utt.realized;
  out["events"] = events;
  out["frame_mask"] = mask;
  return out;
}

}  // namespace

GradeBand BandOfGrade(Grade grade) {
  switch (grade) {
    case Grade::kG1:
      return {0.01, 0.05};
    case Grade::kG2:
      return {0.06, 0.20};
    case Grade::kG3:
      return {0.21, 1.00};
  }
  throw std::invalid_argument("bad grade");
}

const char* GradeName(Grade grade) {
  switch (grade) {
    case Grade::kG1:
      return "G1";
    case Grade::kG2:
      return "G2";
    case Grade::kG3:
      return "G3";
  }
  throw std::invalid_argument("bad grade");
}

Grade ParseGrade(const std::string& name) {
  if (name == "G1") return Grade::kG1;
  if (name == "G2") return Grade::kG2;
  if (name == "G3") return Grade::kG3;
  throw std::invalid_argument("unknown grade: " + name);
}

const char* KindName(DysfluencyKind kind) {
  return kKindNames[static_cast<int>(kind)];
}

DysfluencyKind ParseKind(const std::string& name) {
  for (int i = 0; i < kNumDysfluencyKinds; ++i) {
    if (name == kKindNames[i]) return static_cast<DysfluencyKind>(i);
  }
  throw std::invalid_argument("unknown dysfluency kind: " + name);
}

bool IsHoldKind(DysfluencyKind kind) {
  return kind == DysfluencyKind::kBlock ||
         kind == DysfluencyKind::kProlongation;
}

InjectionResult InjectDysfluencies(const TokenSeq& intended,
                                   const SpeakerProfile& profile,
                                   const InjectionOptions& options, Rng& rng,
                                   bool fluent_mode) {
  if (intended.empty()) throw std::invalid_argument("empty intended sentence");
  if (profile.dysfluent_word_fraction <= 0.0) {
    if (!fluent_mode) {
      throw std::invalid_argument(
          "profile has no dysfluent word fraction; use fluent mode");
    }
    return {intended, {}};
  }

  const int length = static_cast<int>(intended.size());
  const GradeBand band = BandOfGrade(profile.grade);
  // Event count window: the grade band scaled to this sentence, with one
  // word of slack on each side, and never less than one event.
  const int lo = std::max(
      1, static_cast<int>(std::ceil(band.lo * length)) - 1);
  const int hi = std::min(
      length, static_cast<int>(std::floor(band.hi * length)) + 1);
  if (lo > hi) {
    throw std::invalid_argument("sentence too short for grade band");
  }

  std::vector<double> kind_weights(kNumDysfluencyKinds, 0.0);
  for (const auto& [kind, weight] : profile.pattern_weights) {
    kind_weights[static_cast<int>(kind)] = weight;
  }

  for (int attempt = 0; attempt < options.max_retries; ++attempt) {
    const int target = StochasticRound(
        profile.dysfluent_word_fraction * length, rng);
    const int count = std::clamp(target, lo, hi);

    std::vector<DysfluencyKind> kinds;
    kinds.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
      kinds.push_back(
          static_cast<DysfluencyKind>(rng.PickWeighted(kind_weights)));
    }
    const std::vector<PlacedEvent> placed =
        PlaceEvents(intended, kinds, options, rng);

    InjectionResult result;
    result.realized.reserve(intended.size() * 2);
    std::size_t next_event = 0;
    for (int pos = 0; pos < length; ++pos) {
      if (next_event < placed.size() && placed[next_event].anchor == pos) {
        const PlacedEvent& pe = placed[next_event];
        ++next_event;
        DysfluencyEvent event;
        event.kind = pe.kind;
        event.anchor = pos;
        if (IsHoldKind(pe.kind)) {
          event.start = event.end = static_cast<int>(result.realized.size());
          event.extra_steps =
              pe.kind == DysfluencyKind::kBlock
                  ? rng.UniformInt(options.block_steps_min,
                                   options.block_steps_max)
                  : rng.UniformInt(options.prolongation_steps_min,
                                   options.prolongation_steps_max);
        } else {
          const TokenSeq junk = JunkTokens(pe.kind, intended, pos,
                                           profile.grade, options, rng);
          event.start = static_cast<int>(result.realized.size());
          event.end = event.start + static_cast<int>(junk.size());
          result.realized.insert(result.realized.end(), junk.begin(),
                                 junk.end());
        }
        result.events.push_back(event);
      }
      result.realized.push_back(intended[static_cast<std::size_t>(pos)]);
    }

    const double fraction =
        static_cast<double>(result.events.size()) / length;
    const double slack = 1.0 / length;
    if (fraction >= band.lo - slack && fraction <= band.hi + slack) {
      return result;
    }
  }
  throw std::runtime_error("could not fit events into the grade band");
}

TokenSeq RecoverIntended(const Utterance& utterance) {
  std::vector<bool> covered(utterance.realized.size(), false);
  for (const auto& event : utterance.events) {
    for (int i = event.start; i < event.end; ++i) {
      covered[static_cast<std::size_t>(i)] = true;
    }
  }
  TokenSeq out;
  out.reserve(utterance.realized.size());
  for (std::size_t i = 0; i < utterance.realized.size(); ++i) {
    if (!covered[i]) out.push_back(utterance.realized[i]);
  }
  return out;
}

std::vector<StepPlan> BuildStepPlan(
    const TokenSeq& realized, const std::vector<DysfluencyEvent>& events) {
  std::vector<bool> covered(realized.size(), false);
  std::vector<int> holds_before(realized.size(), 0);
  std::vector<int> holds_after(realized.size(), 0);
  for (const auto& event : events) {
    if (IsHoldKind(event.kind)) {
      if (event.start < 0 ||
          event.start >= static_cast<int>(realized.size())) {
        throw std::invalid_argument("hold event outside the token stream");
      }
      if (event.kind == DysfluencyKind::kBlock) {
        holds_before[static_cast<std::size_t>(event.start)] +=
            event.extra_steps;
      } else {
        holds_after[static_cast<std::size_t>(event.start)] +=
            event.extra_steps;
      }
    } else {
      for (int i = event.start; i < event.end; ++i) {
        covered[static_cast<std::size_t>(i)] = true;
      }
    }
  }
  std::vector<StepPlan> plan;
  plan.reserve(realized.size());
  for (std::size_t i = 0; i < realized.size(); ++i) {
    const int idx = static_cast<int>(i);
    for (int h = 0; h < holds_before[i]; ++h) plan.push_back({idx, true, true});
    plan.push_back({idx, false, covered[i]});
    for (int h = 0; h < holds_after[i]; ++h) plan.push_back({idx, true, true});
  }
  return plan;
}

void ValidateUtterance(const Utterance& utt) {
  auto fail = [&utt](const std::string& what) {
    throw std::invalid_argument("utterance " + utt.id + ": " + what);
  };
  if (utt.intended.empty()) fail("intended transcript is empty");
  if (utt.realized.empty()) fail("realized transcript is empty");

  long span_tokens = 0;
  int prev_anchor = -1;
  int prev_end = 0;
  for (const auto& event : utt.events) {
    if (event.anchor <= prev_anchor) fail("events out of anchor order");
    prev_anchor = event.anchor;
    if (event.anchor >= static_cast<int>(utt.intended.size())) {
      fail("event anchor past the intended transcript");
    }
    if (event.start < prev_end || event.end < event.start ||
        event.end > static_cast<int>(utt.realized.size())) {
      fail("event span out of order or out of bounds");
    }
    prev_end = event.end;
    if (IsHoldKind(event.kind)) {
      if (event.start != event.end) fail("hold event with a token span");
      if (event.extra_steps < 1) fail("hold event without extra steps");
    } else {
      if (event.start == event.end) fail("insertion event with empty span");
      if (event.extra_steps != 0) fail("insertion event with extra steps");
      span_tokens += event.end - event.start;
    }
  }
  if (static_cast<long>(utt.realized.size()) !=
      static_cast<long>(utt.intended.size()) + span_tokens) {
    fail("realized length does not match intended plus insertions");
  }
  if (RecoverIntended(utt) != utt.intended) {
    fail("deleting event spans does not recover the intended transcript");
  }
  const std::vector<StepPlan> plan = BuildStepPlan(utt.realized, utt.events);
  if (plan.size() != utt.frame_mask.size()) fail("frame mask length");
  for (std::size_t i = 0; i < plan.size(); ++i) {
    if (static_cast<bool>(utt.frame_mask[i]) != plan[i].dysfluent) {
      fail("frame mask disagrees with the event layout");
    }
  }
}

std::vector<Utterance> GenerateCorpus(
    const std::vector<QueryTemplate>& templates,
    const std::vector<SpeakerProfile>& speakers,
    const CorpusOptions& options) {
  if (templates.empty()) throw std::invalid_argument("no templates");
  if (speakers.empty()) throw std::invalid_argument("no speakers");
  std::vector<Utterance> corpus;
  corpus.reserve(speakers.size() *
                 static_cast<std::size_t>(options.utterances_per_speaker));
  const std::uint64_t base = MixSeed(options.master_seed, "utterance");
  for (const auto& speaker : speakers) {
    SpeakerProfile profile = speaker;
    if (options.fluent) profile.dysfluent_word_fraction = 0.0;
    const std::uint64_t speaker_base = MixSeed(base, speaker.id);
    for (int index = 0; index < options.utterances_per_speaker; ++index) {
      Rng rng(MixSeed(speaker_base, static_cast<std::uint64_t>(index)));
      const QueryTemplate& tpl = templates[static_cast<std::size_t>(
          rng.UniformInt(0, static_cast<int>(templates.size()) - 1))];
      InjectionResult injected = InjectDysfluencies(
          tpl.tokens, profile, options.injection, rng, options.fluent);

      Utterance utt;
      char suffix[16];
      std::snprintf(suffix, sizeof(suffix), "-%04d", index);
      utt.id = speaker.id + suffix;
      utt.speaker_id = speaker.id;
      utt.template_id = tpl.id;
      utt.grade = speaker.grade;
      utt.intended = tpl.tokens;
      utt.realized = std::move(injected.realized);
      utt.events = std::move(injected.events);
      const std::vector<StepPlan> plan =
          BuildStepPlan(utt.realized, utt.events);
      utt.frame_mask.reserve(plan.size());
      for (const auto& step : plan) {
        utt.frame_mask.push_back(step.dysfluent ? 1 : 0);
      }
      ValidateUtterance(utt);
      corpus.push_back(std::move(utt));
    }
  }
  return corpus;
}

std::vector<SpeakerProfile> DefaultSpeakers(std::uint64_t master_seed) {
  struct GradeSpec {
    Grade grade;
    int count;
    double frac_lo;
    double frac_hi;
    std::map<DysfluencyKind, double> base_weights;
  };
  const std::vector<GradeSpec> specs = {
      {Grade::kG1,
       6,
       0.015,
       0.045,
       {{DysfluencyKind::kFiller, 0.30},
        {DysfluencyKind::kWordRepetition, 0.25},
        {DysfluencyKind::kSoundRepetition, 0.15},
        {DysfluencyKind::kBlock, 0.10},
        {DysfluencyKind::kProlongation, 0.10},
        {DysfluencyKind::kPhraseRepetition, 0.05},
        {DysfluencyKind::kRevision, 0.05}}},
      {Grade::kG2,
       7,
       0.08,
       0.18,
       {{DysfluencyKind::kFiller, 0.15},
        {DysfluencyKind::kWordRepetition, 0.20},
        {DysfluencyKind::kSoundRepetition, 0.25},
        {DysfluencyKind::kBlock, 0.12},
        {DysfluencyKind::kProlongation, 0.12},
        {DysfluencyKind::kPhraseRepetition, 0.08},
        {DysfluencyKind::kRevision, 0.08}}},
      {Grade::kG3,
       5,
       0.22,
       0.42,
       {{DysfluencyKind::kFiller, 0.05},
        {DysfluencyKind::kWordRepetition, 0.13},
        {DysfluencyKind::kSoundRepetition, 0.35},
        {DysfluencyKind::kBlock, 0.13},
        {DysfluencyKind::kProlongation, 0.12},
        {DysfluencyKind::kPhraseRepetition, 0.12},
        {DysfluencyKind::kRevision, 0.10}}},
  };
  std::vector<SpeakerProfile> speakers;
  const std::uint64_t base = MixSeed(master_seed, "speaker");
  for (const auto& spec : specs) {
    for (int i = 0; i < spec.count; ++i) {
      SpeakerProfile profile;
      char id[16];
      std::snprintf(id, sizeof(id), "g%ds%02d",
                    static_cast<int>(spec.grade), i + 1);
      profile.id = id;
      profile.grade = spec.grade;
      profile.gender = (i % 2 == 0) ? "m" : "f";
      profile.rng_seed = MixSeed(base, profile.id);
      Rng rng(profile.rng_seed);
      profile.dysfluent_word_fraction =
          spec.frac_lo + (spec.frac_hi - spec.frac_lo) * rng.Uniform();
      for (const auto& [kind, weight] : spec.base_weights) {
        // Mild per speaker jitter keeps panels from being clones.
        profile.pattern_weights[kind] =
            weight * (0.8 + 0.4 * rng.Uniform());
      }
      speakers.push_back(std::move(profile));
    }
  }
  return speakers;
}

void SaveCorpus(const std::vector<Utterance>& corpus,
                const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (const auto& utt : corpus) {
    out << UtteranceToJson(utt).dump() << "\n";
  }
}

std::vector<Utterance> LoadCorpus(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::vector<Utterance> corpus;
  std::string line;
  long line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    try {
      const nlohmann::json j = nlohmann::json::parse(line);
      Utterance utt;
      utt.id = j.at("id").get<std::string>();
      utt.speaker_id = j.at("speaker_id").get<std::string>();
      utt.template_id = j.at("template_id").get<std::string>();
      utt.grade = ParseGrade(j.at("grade").get<std::string>());
      utt.intended = j.at("intended").get<TokenSeq>();
      utt.realized = j.at("realized").get<TokenSeq>();
      for (const auto& e : j.at("events")) {
        DysfluencyEvent event;
        event.kind = ParseKind(e.at("kind").get<std::string>());
        event.start = e.at("start").get<int>();
        event.end = e.at("end").get<int>();
        event.anchor = e.at("anchor").get<int>();
        event.extra_steps = e.value("extra_steps", 0);
        utt.events.push_back(event);
      }
      for (const auto& bit : j.at("frame_mask")) {
        const int value = bit.get<int>();
        if (value != 0 && value != 1) {
          throw std::invalid_argument("frame mask values must be 0 or 1");
        }
        utt.frame_mask.push_back(static_cast<std::uint8_t>(value));
      }
      ValidateUtterance(utt);
      corpus.push_back(std::move(utt));
    } catch (const std::exception& e) {
      throw std::runtime_error(path + " line " + std::to_string(line_number) +
                               ": " + e.what());
    }
  }
  return corpus;
}

}  // namespace stutterlab
