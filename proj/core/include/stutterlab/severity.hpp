// severity.hpp
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
// Frame level severity scoring. A simulated frame classifier emits a
// dysfluency probability per acoustic step; the severity score is 100
// times the mean, bucketed into Mild, Moderate and Severe. The analysis
// then correlates bucket level error rates with grade level error rates,
// and per utterance scores with grades.

#ifndef STUTTERLAB_SEVERITY_HPP_
#define STUTTERLAB_SEVERITY_HPP_

#include <map>
#include <span>
#include <string>
#include <vector>

#include "stutterlab/corpus.hpp"
#include "stutterlab/rng.hpp"
#include "stutterlab/scoring.hpp"

namespace stutterlab {

struct SeverityOptions {
  double noise_sigma = 0.08;  // Gaussian jitter on each frame probability
  double flip_rate = 0.02;    // chance a frame's truth bit is inverted
};

// One probability per frame mask entry, clamped to [0, 1].
std::vector<double> SimulateFramePredictions(const Utterance& utterance,
                                             const SeverityOptions& options,
                                             Rng& rng);

// 100 * mean frame probability. Throws on an empty sequence.
double SeverityScore(std::span<const double> frame_probs);

enum class SeverityBucket { kMild, kModerate, kSevere };

// [0, 10) Mild, [10, 30] Moderate, (30, 100] Severe.
SeverityBucket BucketOf(double score);
const char* BucketName(SeverityBucket bucket);

struct SeverityRecord {
  double score;
  SeverityBucket bucket;
  Grade grade;
  Alignment alignment;
};

struct SeverityCorrelations {
  // Pearson r between the three bucket error rates and the three grade
  // error rates (three points; too few for a p-value).
  double bucket_r;
  std::map<std::string, double> bucket_iswer;
  std::map<std::string, double> grade_iswer;
  // Per utterance severity score against numeric grade.
  double utterance_r;
  double utterance_p;
  std::size_t n;
};

// Throws std::runtime_error when a bucket or grade has no utterances
// (three matched points are required on each side).
SeverityCorrelations CorrelationAnalysis(
    std::span<const SeverityRecord> records);

}  // namespace stutterlab

#endif  // STUTTERLAB_SEVERITY_HPP_
