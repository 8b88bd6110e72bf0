// nlu.cpp
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

#include "stutterlab/nlu.hpp"

#include <map>
#include <stdexcept>

namespace stutterlab {

double DiceSimilarity(const TokenSeq& a_raw, const TokenSeq& b_raw) {
  const TokenSeq a = NormalizeTokens(a_raw);
  const TokenSeq b = NormalizeTokens(b_raw);
  if (a.empty() || b.empty()) return 0.0;
  std::map<Token, int> counts;
  for (const auto& token : a) counts[token] += 1;
  int overlap = 0;
  for (const auto& token : b) {
    auto it = counts.find(token);
    if (it != counts.end() && it->second > 0) {
      --it->second;
      ++overlap;
    }
  }
  return 2.0 * overlap / static_cast<double>(a.size() + b.size());
}

NluPrediction ClassifyTokens(const TokenSeq& tokens,
                             const std::vector<QueryTemplate>& templates,
                             const NluOptions& options) {
  if (templates.empty()) throw std::invalid_argument("no templates");
  NluPrediction best{kGarbageLabel, kGarbageLabel, "", 0.0};
  bool have_best = false;
  for (const auto& tpl : templates) {
    const double similarity = DiceSimilarity(tokens, tpl.tokens);
    const bool better =
        !have_best || similarity > best.similarity ||
        (similarity == best.similarity && tpl.id < best.template_id);
    if (better) {
      best = {tpl.domain, tpl.intent, tpl.id, similarity};
      have_best = true;
    }
  }
  if (best.similarity < options.similarity_threshold) {
    return {kGarbageLabel, kGarbageLabel, "", best.similarity};
  }
  return best;
}

NluMetrics EvaluateNlu(std::span<const NluPrediction> predictions,
                       std::span<const std::string> true_domains,
                       std::span<const std::string> true_intents) {
  if (predictions.size() != true_domains.size() ||
      predictions.size() != true_intents.size()) {
    throw std::invalid_argument("prediction and label counts differ");
  }
  if (predictions.empty()) throw std::invalid_argument("nothing to evaluate");
  std::size_t domain_hits = 0, intent_hits = 0, garbage = 0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    if (predictions[i].domain == true_domains[i]) ++domain_hits;
    if (predictions[i].intent == true_intents[i]) ++intent_hits;
    if (predictions[i].intent == kGarbageLabel) ++garbage;
  }
  const double n = static_cast<double>(predictions.size());
  NluMetrics out;
  out.domain_accuracy = 100.0 * static_cast<double>(domain_hits) / n;
  out.intent_accuracy = 100.0 * static_cast<double>(intent_hits) / n;
  out.garbage_rate = 100.0 * static_cast<double>(garbage) / n;
  out.n = predictions.size();
  return out;
}

NluComparison CompareNlu(const NluMetrics& baseline,
                         const NluMetrics& contrast) {
  auto relative = [](double base, double value) {
    if (base == 0.0) {
      throw std::invalid_argument("baseline metric is zero");
    }
    return 100.0 * (value - base) / base;
  };
  NluComparison out;
  out.baseline = baseline;
  out.contrast = contrast;
  out.domain_accuracy_gain =
      relative(baseline.domain_accuracy, contrast.domain_accuracy);
  out.intent_accuracy_gain =
      relative(baseline.intent_accuracy, contrast.intent_accuracy);
  out.garbage_rate_change =
      relative(baseline.garbage_rate, contrast.garbage_rate);
  return out;
}

}  // namespace stutterlab
