// amsim.hpp
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
// Simulated acoustic model emissions. Instead of running a real acoustic
// frontend, each utterance is expanded into a sequence of scored candidate
// lists: one step per realized token plus hold steps where blocks and
// prolongations stall. Every step carries exactly one <eps> entry, which
// lets the decoder skip dysfluent material instead of transcribing it.

#ifndef STUTTERLAB_AMSIM_HPP_
#define STUTTERLAB_AMSIM_HPP_

#include <span>
#include <utility>
#include <vector>

#include "stutterlab/corpus.hpp"
#include "stutterlab/rng.hpp"
#include "stutterlab/tokens.hpp"

namespace stutterlab {

struct ConfusionModel {
  // Margin of the spoken token over an average competitor in clean speech.
  double correct_logit_mean = 480.0;
  // Gaussian jitter applied to every candidate score.
  double confusion_spread = 48.0;
  // Inside dysfluent material the correct margin shrinks to
  // correct_logit_mean * (1 - dysfluent_degradation).
  double dysfluent_degradation = 0.4;
  // Additive <eps> advantage inside dysfluent material.
  double epsilon_boost = 6.0;
  // Candidate list size per step, <eps> included.
  int top_k_candidates = 6;
};

struct EmissionStep {
  // (token, acoustic log score); exactly one token equals <eps>.
  std::vector<std::pair<Token, double>> candidates;
  int realized_index;  // token this step belongs to
  bool hold;           // step emits nothing (block/prolongation stall)
  bool dysfluent;
};

struct EmissionSequence {
  std::vector<EmissionStep> steps;
};

// Expands one utterance. `distractor_pool` supplies competitor tokens; it
// must be sorted and deduplicated (see BuildDistractorPool). Deterministic
// in (utterance, model, pool, rng state).
//
// Score layout per step, before jitter:
//   fluent emit step    correct = mean, others = 0, <eps> = 0
//   dysfluent emit step correct = mean * (1 - degradation), <eps> = boost
//   hold step           <eps> = mean * (1 - degradation) + boost, words = 0
// With zero spread, greedy argmax over word candidates reproduces the
// realized tokens and every hold step prefers <eps>.
EmissionSequence SimulateEmissions(const Utterance& utterance,
                                   const ConfusionModel& model,
                                   std::span<const Token> distractor_pool,
                                   Rng& rng);

// Sorted unique tokens over realized transcripts.
std::vector<Token> BuildDistractorPool(const std::vector<Utterance>& corpus);

}  // namespace stutterlab

#endif  // STUTTERLAB_AMSIM_HPP_
