// severity.cpp
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

#include "stutterlab/severity.hpp"

#include <algorithm>
#include <stdexcept>

#include "stutterlab/stats.hpp"

namespace stutterlab {

std::vector<double> SimulateFramePredictions(const Utterance& utterance,
                                             const SeverityOptions& options,
                                             Rng& rng) {
  std::vector<double> probs;
  probs.reserve(utterance.frame_mask.size());
  for (std::uint8_t bit : utterance.frame_mask) {
    double truth = bit ? 1.0 : 0.0;
    if (rng.Bernoulli(options.flip_rate)) truth = 1.0 - truth;
    probs.push_back(
        std::clamp(truth + rng.Normal(0.0, options.noise_sigma), 0.0, 1.0));
  }
  return probs;
}

double SeverityScore(std::span<const double> frame_probs) {
  if (frame_probs.empty()) {
    throw std::invalid_argument("no frame predictions");
  }
  return 100.0 * Mean(frame_probs);
}

SeverityBucket BucketOf(double score) {
  if (score < 0.0 || score > 100.0) {
    throw std::invalid_argument("severity score out of range");
  }
  if (score < 10.0) return SeverityBucket::kMild;
  if (score <= 30.0) return SeverityBucket::kModerate;
  return SeverityBucket::kSevere;
}

const char* BucketName(SeverityBucket bucket) {
  switch (bucket) {
    case SeverityBucket::kMild:
      return "Mild";
    case SeverityBucket::kModerate:
      return "Moderate";
    case SeverityBucket::kSevere:
      return "Severe";
  }
  throw std::invalid_argument("bad bucket");
}

SeverityCorrelations CorrelationAnalysis(
    std::span<const SeverityRecord> records) {
  std::map<SeverityBucket, std::vector<Alignment>> by_bucket;
  std::map<Grade, std::vector<Alignment>> by_grade;
  std::vector<double> scores, grades;
  scores.reserve(records.size());
  grades.reserve(records.size());
  for (const auto& record : records) {
    by_bucket[record.bucket].push_back(record.alignment);
    by_grade[record.grade].push_back(record.alignment);
    scores.push_back(record.score);
    grades.push_back(static_cast<double>(record.grade));
  }
  if (by_bucket.size() != 3) {
    throw std::runtime_error("need utterances in all three severity buckets");
  }
  if (by_grade.size() != 3) {
    throw std::runtime_error("need utterances in all three grades");
  }

  SeverityCorrelations out;
  std::vector<double> bucket_rates, grade_rates;
  for (const auto& [bucket, alignments] : by_bucket) {
    const double rate = PooledErrorRates(alignments).iswer;
    out.bucket_iswer[BucketName(bucket)] = rate;
    bucket_rates.push_back(rate);
  }
  for (const auto& [grade, alignments] : by_grade) {
    const double rate = PooledErrorRates(alignments).iswer;
    out.grade_iswer[GradeName(grade)] = rate;
    grade_rates.push_back(rate);
  }
  out.bucket_r = PearsonR(bucket_rates, grade_rates);
  const PearsonResult utt = PearsonCorrelation(scores, grades);
  out.utterance_r = utt.r;
  out.utterance_p = utt.p;
  out.n = utt.n;
  return out;
}

}  // namespace stutterlab
