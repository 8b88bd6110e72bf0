// nlu.hpp
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
// Template matching NLU. A decoded transcript is matched against the query
// template bank by Dice similarity over token multisets; matches under the
// threshold fall into a garbage intent. Residual dysfluent tokens dilute
// the overlap, which is how decoder quality propagates into intent
// accuracy.

#ifndef STUTTERLAB_NLU_HPP_
#define STUTTERLAB_NLU_HPP_

#include <span>
#include <string>
#include <vector>

#include "stutterlab/corpus.hpp"
#include "stutterlab/tokens.hpp"

namespace stutterlab {

inline constexpr const char* kGarbageLabel = "garbage";

struct NluOptions {
  double similarity_threshold = 0.5;
};

struct NluPrediction {
  std::string domain;
  std::string intent;
  std::string template_id;  // empty for garbage
  double similarity = 0.0;
};

// 2 |A and B| / (|A| + |B|) over token multisets, after normalization.
// Zero when either side is empty.
double DiceSimilarity(const TokenSeq& a, const TokenSeq& b);

// Best template by similarity; ties break to the lexicographically
// smallest template id. Below the threshold the prediction is
// garbage/garbage.
NluPrediction ClassifyTokens(const TokenSeq& tokens,
                             const std::vector<QueryTemplate>& templates,
                             const NluOptions& options);

struct NluMetrics {
  double domain_accuracy = 0.0;  // percent
  double intent_accuracy = 0.0;  // percent
  double garbage_rate = 0.0;     // percent of utterances
  std::size_t n = 0;
};

// Expected labels come from the utterance's source template.
NluMetrics EvaluateNlu(std::span<const NluPrediction> predictions,
                       std::span<const std::string> true_domains,
                       std::span<const std::string> true_intents);

struct NluComparison {
  NluMetrics baseline;
  NluMetrics contrast;
  double domain_accuracy_gain;   // percent relative to baseline
  double intent_accuracy_gain;   // percent relative to baseline
  double garbage_rate_change;    // percent relative to baseline; negative
                                 // means fewer garbage intents
};

NluComparison CompareNlu(const NluMetrics& baseline,
                         const NluMetrics& contrast);

}  // namespace stutterlab

#endif  // STUTTERLAB_NLU_HPP_
