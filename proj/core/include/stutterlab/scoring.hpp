// scoring.hpp
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
// Word level alignment and error rates against intended transcripts. The
// reference is what the speaker meant to say, so dysfluent material that
// survives decoding shows up as insertions.

#ifndef STUTTERLAB_SCORING_HPP_
#define STUTTERLAB_SCORING_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>

#include "stutterlab/tokens.hpp"

namespace stutterlab {

enum class EditOp { kMatch, kSubstitute, kDelete, kInsert };

struct AlignedOp {
  EditOp op;
  int ref_index;  // -1 for insertions
  int hyp_index;  // -1 for deletions
};

struct Alignment {
  std::vector<AlignedOp> ops;
  int matches = 0;
  int substitutions = 0;
  int deletions = 0;
  int insertions = 0;
  int ref_len = 0;
  int hyp_len = 0;

  int Errors() const { return substitutions + deletions + insertions; }
  bool Correct() const { return Errors() == 0; }
};

// Minimum edit distance alignment with unit costs. Tokens are compared
// after normalization (case folded, punctuation stripped, trailing '-'
// kept). Ties in the backtrace resolve match, then substitute, then
// delete, then insert, so the alignment is unique. Throws
// std::invalid_argument if the reference normalizes to nothing.
Alignment AlignTokens(const TokenSeq& ref, const TokenSeq& hyp);

// Error rates pooled over a batch: every rate is
//   100 * count / total reference tokens.
// iswer is stored as the float sum of the three component rates, so the
// identity iswer == ins + del + sub holds exactly before any rounding.
struct ErrorRates {
  double iswer = 0.0;
  double insertion_rate = 0.0;
  double deletion_rate = 0.0;
  double substitution_rate = 0.0;
  long insertions = 0;
  long deletions = 0;
  long substitutions = 0;
  long matches = 0;
  long ref_tokens = 0;
  long utterances = 0;
};

ErrorRates PooledErrorRates(std::span<const Alignment> alignments);

// Pooled rates per group key, in sorted key order.
std::map<std::string, ErrorRates> GroupedErrorRates(
    std::span<const std::string> keys, std::span<const Alignment> alignments);

// Percent improvement of `improved` over `baseline`; positive is better.
double RelativeImprovement(double baseline, double improved);

// Mean reference length of correctly and incorrectly decoded utterances.
// A side is empty when no utterance falls in it.
struct WordCountStats {
  std::optional<double> mean_len_correct;
  std::optional<double> mean_len_incorrect;
  std::size_t num_correct = 0;
  std::size_t num_incorrect = 0;
};

WordCountStats WordCountAnalysis(std::span<const Alignment> alignments);

}  // namespace stutterlab

#endif  // STUTTERLAB_SCORING_HPP_
