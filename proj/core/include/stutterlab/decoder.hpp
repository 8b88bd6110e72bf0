// decoder.hpp
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
// Time synchronous beam search over simulated emissions. Choosing <eps> at
// a step pays that step's acoustic score but appends nothing, so dysfluent
// material can collapse out of the transcript when the language model and
// insertion penalty outweigh the acoustic evidence for it.

#ifndef STUTTERLAB_DECODER_HPP_
#define STUTTERLAB_DECODER_HPP_

#include <vector>

#include "stutterlab/amsim.hpp"
#include "stutterlab/ngram.hpp"
#include "stutterlab/tokens.hpp"

namespace stutterlab {

struct DecoderConfig {
  double am_weight = 1.0 / 15.0;
  double insertion_penalty = 0.0;
  int beam_width = 16;
  double pruning_threshold = 90.0;
  double lattice_beam = 12.0;
  int nbest = 8;

  // Throws std::invalid_argument on nonsense (non-positive weight, beam,
  // thresholds, or a negative penalty).
  void Validate() const;
};

struct Hypothesis {
  TokenSeq tokens;
  double am_logscore = 0.0;
  double lm_logscore = 0.0;  // includes the end of sentence transition
  double combined_score = 0.0;
};

// combined = am_weight * am + lm - insertion_penalty * token count.
double CombinedScore(double am_logscore, double lm_logscore,
                     std::size_t num_tokens, const DecoderConfig& config);

// Returns up to nbest hypotheses, best first; ties order lexicographically
// by token sequence. Every candidate list must contain exactly one <eps>
// entry (SimulateEmissions guarantees this). Hypotheses within
// lattice_beam of the best survive the final cut; pruning_threshold plays
// the same role per step during the search.
std::vector<Hypothesis> Decode(const EmissionSequence& emissions,
                               const NGramModel& lm,
                               const DecoderConfig& config);

}  // namespace stutterlab

#endif  // STUTTERLAB_DECODER_HPP_
