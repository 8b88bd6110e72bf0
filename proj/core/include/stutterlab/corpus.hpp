// corpus.hpp
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
// Synthetic dysfluent speech corpus. Each utterance starts from an intended
// query template; dysfluency events then insert material (partial words,
// repeats, fillers, abandoned restarts) or stretch the acoustics of a word
// (blocks, prolongations) without changing the token stream. Inserted
// material is recorded as realized-token spans, so deleting the spans
// recovers the intended transcript exactly.

#ifndef STUTTERLAB_CORPUS_HPP_
#define STUTTERLAB_CORPUS_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "stutterlab/rng.hpp"
#include "stutterlab/tokens.hpp"

namespace stutterlab {

enum class Grade { kG1 = 1, kG2 = 2, kG3 = 3 };

// Fraction of intended words carrying a dysfluency event, by grade.
struct GradeBand {
  double lo;
  double hi;
};
GradeBand BandOfGrade(Grade grade);
const char* GradeName(Grade grade);
Grade ParseGrade(const std::string& name);

enum class DysfluencyKind {
  kBlock,
  kProlongation,
  kSoundRepetition,
  kWordRepetition,
  kPhraseRepetition,
  kFiller,
  kRevision,
};
inline constexpr int kNumDysfluencyKinds = 7;
const char* KindName(DysfluencyKind kind);
DysfluencyKind ParseKind(const std::string& name);

// True for kinds that stretch a word's acoustics instead of inserting
// tokens.
bool IsHoldKind(DysfluencyKind kind);

struct DysfluencyEvent {
  DysfluencyKind kind;
  // Realized-token span [start, end) of inserted material. Hold events
  // insert nothing: start == end == the anchor's realized index.
  int start = 0;
  int end = 0;
  // Index of the intended word the event is attached to.
  int anchor = 0;
  // Extra acoustic frames consumed by hold events; 0 for insertions.
  int extra_steps = 0;
};

struct QueryTemplate {
  std::string id;
  std::string domain;
  std::string intent;
  TokenSeq tokens;
};

struct SpeakerProfile {
  std::string id;
  Grade grade;
  std::string gender;
  double dysfluent_word_fraction = 0.0;
  std::map<DysfluencyKind, double> pattern_weights;
  std::uint64_t rng_seed = 0;
};

struct Utterance {
  std::string id;
  std::string speaker_id;
  std::string template_id;
  Grade grade;
  TokenSeq intended;
  TokenSeq realized;
  std::vector<DysfluencyEvent> events;
  // One flag per acoustic step (see BuildStepPlan); 1 inside dysfluent
  // material.
  std::vector<std::uint8_t> frame_mask;
};

struct InjectionOptions {
  // Chance that a sound repetition anchors to one of the first two words.
  double sound_rep_initial_bias = 0.6;
  // Placement weight multiplier for words starting with t d n r s.
  double onset_weight = 3.0;
  int max_retries = 16;
  int block_steps_min = 1;
  int block_steps_max = 2;
  int prolongation_steps_min = 1;
  int prolongation_steps_max = 3;
  int filler_tokens_max = 2;
  // Partial repeats per sound repetition event, by grade.
  int sound_reps_max_g1 = 1;
  int sound_reps_max_g2 = 3;
  int sound_reps_max_g3 = 5;
  int phrase_len_min = 2;
  int phrase_len_max = 4;
  // Times a phrase repetition loops before the phrase goes through.
  int phrase_reps_max_g1 = 1;
  int phrase_reps_max_g2 = 2;
  int phrase_reps_max_g3 = 4;
  int revision_len_min = 2;
  int revision_len_max = 6;
};

struct InjectionResult {
  TokenSeq realized;
  std::vector<DysfluencyEvent> events;
};

// Applies the speaker's dysfluency pattern to one intended sentence. At
// least one event is injected; the expected event count is the speaker's
// dysfluent word fraction times the sentence length, confined to the
// speaker's grade band with one word of slack per utterance. A zero
// fraction profile is rejected unless `fluent_mode` is set, in which case
// the sentence passes through untouched.
InjectionResult InjectDysfluencies(const TokenSeq& intended,
                                   const SpeakerProfile& profile,
                                   const InjectionOptions& options, Rng& rng,
                                   bool fluent_mode = false);

// Deletes span-covered realized tokens. For a well formed utterance this
// returns the intended transcript exactly.
TokenSeq RecoverIntended(const Utterance& utterance);

// One entry per acoustic step: an emission step per realized token, plus
// hold steps around the anchors of block and prolongation events (blocks
// stall before the word, prolongations after). `dysfluent` mirrors the
// utterance frame mask.
struct StepPlan {
  int realized_index;  // token emitted at this step
  bool hold;           // true: the step emits nothing
  bool dysfluent;
};
std::vector<StepPlan> BuildStepPlan(const TokenSeq& realized,
                                    const std::vector<DysfluencyEvent>& events);

// Throws std::invalid_argument describing the first violated invariant.
void ValidateUtterance(const Utterance& utterance);

struct CorpusOptions {
  int utterances_per_speaker = 90;
  std::uint64_t master_seed = 7;
  InjectionOptions injection;
  // Regenerates the same prompts read fluently: no events, no mask.
  bool fluent = false;
};

// Deterministic in (templates, speakers, options); utterance streams are
// seeded per (master seed, speaker id, index), so neither thread count nor
// speaker order can shift them.
std::vector<Utterance> GenerateCorpus(
    const std::vector<QueryTemplate>& templates,
    const std::vector<SpeakerProfile>& speakers, const CorpusOptions& options);

// The default speaker panel: 6 grade 1, 7 grade 2, 5 grade 3 speakers with
// per speaker fractions and pattern weights drawn from the master seed.
std::vector<SpeakerProfile> DefaultSpeakers(std::uint64_t master_seed);

// JSONL, one utterance per line, stable key order.
void SaveCorpus(const std::vector<Utterance>& corpus, const std::string& path);
std::vector<Utterance> LoadCorpus(const std::string& path);

}  // namespace stutterlab

#endif  // STUTTERLAB_CORPUS_HPP_
