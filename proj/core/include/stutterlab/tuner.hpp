// tuner.hpp
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
// Decoder parameter tuning. A small grid over decoder settings is scored
// by pooled error rate on development data; splits are speaker-atomic and
// grade-stratified so no speaker leaks across the boundary. Emissions are
// simulated once per utterance and shared by every grid point, so grid
// differences reflect the decoder, not acoustic resampling.

#ifndef STUTTERLAB_TUNER_HPP_
#define STUTTERLAB_TUNER_HPP_

#include <cstdint>
#include <vector>

#include "stutterlab/amsim.hpp"
#include "stutterlab/corpus.hpp"
#include "stutterlab/decoder.hpp"
#include "stutterlab/ngram.hpp"
#include "stutterlab/scoring.hpp"

namespace stutterlab {

struct ParamGrid {
  std::vector<double> am_weights = {1.0 / 15.0, 1.0 / 30.0};
  std::vector<double> insertion_penalties = {0.0, 1.0, 2.0};
  std::vector<int> beam_widths = {16};
  std::vector<double> pruning_thresholds = {90.0};
  std::vector<double> lattice_beams = {12.0};
  std::vector<int> nbests = {8};

  // Nested loops in field order, am_weights outermost.
  std::vector<DecoderConfig> Enumerate() const;
};

// Tie order for equal dev scores: lower insertion penalty, then higher
// acoustic weight, then smaller beam, then the remaining fields ascending.
bool ConfigPreferred(const DecoderConfig& a, const DecoderConfig& b);

enum class SplitKind { kHoldout, kLeaveOneSpeakerPerGradeOut };

struct CvScheme {
  SplitKind kind = SplitKind::kHoldout;
  double dev_fraction = 0.8;  // holdout only; speaker-level, per grade
  std::uint64_t seed = 17;
};

struct Fold {
  std::vector<std::size_t> dev;
  std::vector<std::size_t> test;
};

// Holdout: one fold; per grade, round(dev_fraction * speakers) speakers go
// to dev (at least one on each side), chosen by seeded shuffle.
// LeaveOneSpeakerPerGradeOut: as many folds as the largest grade panel;
// fold f tests speaker f modulo the panel size in each grade, so every
// speaker is tested at least once and grades stay covered.
std::vector<Fold> MakeFolds(const std::vector<Utterance>& corpus,
                            const CvScheme& scheme);

struct GridPoint {
  DecoderConfig config;
  double dev_iswer;
};

struct FoldOutcome {
  DecoderConfig best;  // winner on this fold's dev data alone
  double dev_iswer;
  double test_iswer;          // overall winner applied to this fold's test
  double default_test_iswer;  // reference config on the same test data
};

struct TuneResult {
  DecoderConfig best;  // lowest dev error pooled across folds
  double dev_iswer;
  std::vector<GridPoint> grid;  // enumeration order, pooled dev scores
  std::vector<FoldOutcome> folds;
  double test_iswer = 0.0;
  double default_test_iswer = 0.0;
  double relative_improvement = 0.0;  // default vs best on pooled test
};

// Evaluates every grid point on every fold. `emissions` must be parallel
// to `corpus` (one simulated sequence per utterance, reused everywhere).
TuneResult CrossValidate(const std::vector<Utterance>& corpus,
                         const std::vector<EmissionSequence>& emissions,
                         const ParamGrid& grid, const CvScheme& scheme,
                         const NGramModel& lm,
                         const DecoderConfig& default_config, int workers);

}  // namespace stutterlab

#endif  // STUTTERLAB_TUNER_HPP_
