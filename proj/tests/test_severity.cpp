// test_severity.cpp
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

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "stutterlab/rng.hpp"
#include "stutterlab/severity.hpp"
#include "stutterlab/stats.hpp"

namespace stutterlab {
namespace {

Utterance MaskedUtterance(std::initializer_list<int> bits) {
  Utterance utt;
  for (int b : bits) utt.frame_mask.push_back(b ? 1 : 0);
  return utt;
}

Alignment MakeAlignment(int matches, int subs, int dels, int ins) {
  Alignment a;
  a.matches = matches;
  a.substitutions = subs;
  a.deletions = dels;
  a.insertions = ins;
  a.ref_len = matches + subs + dels;
  a.hyp_len = matches + subs + ins;
  return a;
}

}  // namespace

TEST_SUITE("severity") {

TEST_CASE("score is one hundred times the mean frame probability") {
  const std::vector<double> half = {0.0, 0.0, 1.0, 1.0};
  CHECK(SeverityScore(half) == doctest::Approx(50.0));
  const std::vector<double> quarter = {0.25};
  CHECK(SeverityScore(quarter) == doctest::Approx(25.0));
  const std::vector<double> zero = {0.0, 0.0};
  CHECK(SeverityScore(zero) == doctest::Approx(0.0));
  CHECK_THROWS_AS(SeverityScore(std::vector<double>{}),
                  std::invalid_argument);
}

TEST_CASE("bucket boundaries") {
  CHECK(BucketOf(0.0) == SeverityBucket::kMild);
  CHECK(BucketOf(9.999) == SeverityBucket::kMild);
  CHECK(BucketOf(10.0) == SeverityBucket::kModerate);
  CHECK(BucketOf(30.0) == SeverityBucket::kModerate);
  CHECK(BucketOf(30.0001) == SeverityBucket::kSevere);
  CHECK(BucketOf(100.0) == SeverityBucket::kSevere);
  CHECK_THROWS_AS(BucketOf(-0.001), std::invalid_argument);
  CHECK_THROWS_AS(BucketOf(100.001), std::invalid_argument);
  CHECK(std::string(BucketName(SeverityBucket::kMild)) == "Mild");
  CHECK(std::string(BucketName(SeverityBucket::kModerate)) == "Moderate");
  CHECK(std::string(BucketName(SeverityBucket::kSevere)) == "Severe");
}

TEST_CASE("buckets partition the score range monotonically") {
  Rng rng(90210);
  for (int i = 0; i < 1000; ++i) {
    const double score = rng.Uniform() * 100.0;
    const SeverityBucket bucket = BucketOf(score);
    if (score < 10.0) {
      CHECK(bucket == SeverityBucket::kMild);
    } else if (score <= 30.0) {
      CHECK(bucket == SeverityBucket::kModerate);
    } else {
      CHECK(bucket == SeverityBucket::kSevere);
    }
    const double higher = score + rng.Uniform() * (100.0 - score);
    CHECK(static_cast<int>(BucketOf(higher)) >= static_cast<int>(bucket));
  }
}

TEST_CASE("noiseless frame predictions echo the dysfluency mask") {
  const Utterance utt = MaskedUtterance({0, 1, 1, 0, 1, 0, 0});
  SeverityOptions options;
  options.noise_sigma = 0.0;
  options.flip_rate = 0.0;
  Rng rng(1);
  const std::vector<double> probs =
      SimulateFramePredictions(utt, options, rng);
  REQUIRE(probs.size() == utt.frame_mask.size());
  for (std::size_t i = 0; i < probs.size(); ++i) {
    CHECK(probs[i] == doctest::Approx(utt.frame_mask[i] ? 1.0 : 0.0));
  }
  CHECK(SeverityScore(probs) ==
        doctest::Approx(100.0 * 3.0 / 7.0).epsilon(1e-12));
}

TEST_CASE("frame predictions stay in range and track the mask on average") {
  Utterance utt;
  for (int i = 0; i < 400; ++i) utt.frame_mask.push_back(i % 3 == 0 ? 1 : 0);
  SeverityOptions options;
  Rng rng(22);
  const std::vector<double> probs =
      SimulateFramePredictions(utt, options, rng);
  REQUIRE(probs.size() == utt.frame_mask.size());
  double on_sum = 0.0, off_sum = 0.0;
  int on_n = 0, off_n = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    CHECK(probs[i] >= 0.0);
    CHECK(probs[i] <= 1.0);
    if (utt.frame_mask[i]) {
      on_sum += probs[i];
      ++on_n;
    } else {
      off_sum += probs[i];
      ++off_n;
    }
  }
  CHECK(on_sum / on_n > 0.8);
  CHECK(off_sum / off_n < 0.2);
}

TEST_CASE("frame predictions are deterministic per seed") {
  const Utterance utt = MaskedUtterance({1, 0, 1, 1, 0, 0, 1, 0});
  SeverityOptions options;
  Rng a(99), b(99), c(100);
  const auto pa = SimulateFramePredictions(utt, options, a);
  const auto pb = SimulateFramePredictions(utt, options, b);
  const auto pc = SimulateFramePredictions(utt, options, c);
  CHECK(pa == pb);
  CHECK(pa != pc);
}

TEST_CASE("correlation analysis matches a hand-rolled computation") {
  Rng rng(314);
  std::vector<SeverityRecord> records;
  for (int i = 0; i < 120; ++i) {
    SeverityRecord rec;
    rec.score = rng.Uniform() * 100.0;
    rec.bucket = BucketOf(rec.score);
    rec.grade = static_cast<Grade>(1 + i % 3);
    // Error counts scale with the severity score so the bucket level
    // correlation has real variance behind it.
    const int subs = static_cast<int>(rec.score / 25.0);
    const int dels = static_cast<int>(rec.score / 40.0);
    const int ins = static_cast<int>(rec.score / 30.0);
    rec.alignment = MakeAlignment(12 - subs - dels, subs, dels, ins);
    records.push_back(rec);
  }

  const SeverityCorrelations result = CorrelationAnalysis(records);
  CHECK(result.n == records.size());

  std::map<SeverityBucket, std::vector<Alignment>> by_bucket;
  std::map<Grade, std::vector<Alignment>> by_grade;
  std::vector<double> scores, grades;
  for (const auto& rec : records) {
    by_bucket[rec.bucket].push_back(rec.alignment);
    by_grade[rec.grade].push_back(rec.alignment);
    scores.push_back(rec.score);
    grades.push_back(static_cast<double>(rec.grade));
  }
  REQUIRE(by_bucket.size() == 3);

  std::vector<double> bucket_rates, grade_rates;
  for (const auto& [bucket, aligns] : by_bucket) {
    const double rate = PooledErrorRates(aligns).iswer;
    bucket_rates.push_back(rate);
    CHECK(result.bucket_iswer.at(BucketName(bucket)) ==
          doctest::Approx(rate).epsilon(1e-12));
  }
  for (const auto& [grade, aligns] : by_grade) {
    const double rate = PooledErrorRates(aligns).iswer;
    grade_rates.push_back(rate);
    CHECK(result.grade_iswer.at(GradeName(grade)) ==
          doctest::Approx(rate).epsilon(1e-12));
  }
  CHECK(result.bucket_r ==
        doctest::Approx(PearsonR(bucket_rates, grade_rates)).epsilon(1e-12));

  const PearsonResult utt = PearsonCorrelation(scores, grades);
  CHECK(result.utterance_r == doctest::Approx(utt.r).epsilon(1e-12));
  CHECK(result.utterance_p == doctest::Approx(utt.p).epsilon(1e-9));
}

TEST_CASE("correlation analysis requires every bucket and grade") {
  std::vector<SeverityRecord> records;
  auto add = [&](double score, Grade grade) {
    SeverityRecord rec;
    rec.score = score;
    rec.bucket = BucketOf(score);
    rec.grade = grade;
    rec.alignment = MakeAlignment(8, 1, 0, 1);
    records.push_back(rec);
  };
  // All three grades but only two buckets.
  add(5.0, Grade::kG1);
  add(15.0, Grade::kG2);
  add(20.0, Grade::kG3);
  add(25.0, Grade::kG1);
  CHECK_THROWS_AS(CorrelationAnalysis(records), std::runtime_error);
  // All three buckets but a missing grade.
  records.clear();
  add(5.0, Grade::kG1);
  add(15.0, Grade::kG2);
  add(50.0, Grade::kG2);
  add(60.0, Grade::kG1);
  CHECK_THROWS_AS(CorrelationAnalysis(records), std::runtime_error);
  // Complete coverage passes.
  add(70.0, Grade::kG3);
  CHECK_NOTHROW(CorrelationAnalysis(records));
}

}  // TEST_SUITE

}  // namespace stutterlab
