// amsim.cpp
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

#include "stutterlab/amsim.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "stutterlab/vocab.hpp"

namespace stutterlab {

namespace {

// First pool token sharing the partial's prefix, e.g. "add-" -> "address".
const Token* FullFormOf(const Token& partial,
                        std::span<const Token> pool) {
  const std::string prefix = partial.substr(0, partial.size() - 1);
  auto it = std::lower_bound(pool.begin(), pool.end(), prefix);
  for (; it != pool.end() && it->rfind(prefix, 0) == 0; ++it) {
    if (*it != partial) return &*it;
  }
  return nullptr;
}

void AddCandidate(std::vector<std::pair<Token, double>>& candidates,
                  std::set<Token>& used, const Token& token, double score) {
  if (used.insert(token).second) candidates.emplace_back(token, score);
}

}  // namespace

std::vector<Token> BuildDistractorPool(const std::vector<Utterance>& corpus) {
  std::set<Token> tokens;
  for (const auto& utt : corpus) {
    tokens.insert(utt.realized.begin(), utt.realized.end());
  }
  return {tokens.begin(), tokens.end()};
}

EmissionSequence SimulateEmissions(const Utterance& utterance,
                                   const ConfusionModel& model,
                                   std::span<const Token> distractor_pool,
                                   Rng& rng) {
  if (model.top_k_candidates < 2) {
    throw std::invalid_argument("need at least a word and <eps> per step");
  }
  if (distractor_pool.empty()) {
    throw std::invalid_argument("empty distractor pool");
  }
  const double degraded_mean =
      model.correct_logit_mean * (1.0 - model.dysfluent_degradation);

  EmissionSequence out;
  const std::vector<StepPlan> plan =
      BuildStepPlan(utterance.realized, utterance.events);
  out.steps.reserve(plan.size());
  for (const auto& step : plan) {
    const Token& spoken =
        utterance.realized[static_cast<std::size_t>(step.realized_index)];
    EmissionStep emission;
    emission.realized_index = step.realized_index;
    emission.hold = step.hold;
    emission.dysfluent = step.dysfluent;

    std::set<Token> used;
    auto& cands = emission.candidates;
    auto jitter = [&rng, &model]() {
      return rng.Normal(0.0, model.confusion_spread);
    };

    if (step.hold) {
      AddCandidate(cands, used, kEps,
                   degraded_mean + model.epsilon_boost + jitter());
      AddCandidate(cands, used, spoken, jitter());
    } else if (step.dysfluent) {
      AddCandidate(cands, used, spoken, degraded_mean + jitter());
      AddCandidate(cands, used, kEps, model.epsilon_boost + jitter());
    } else {
      AddCandidate(cands, used, spoken,
                   model.correct_logit_mean + jitter());
      AddCandidate(cands, used, kEps, jitter());
    }

    // Acoustically plausible confusions: a partial word answers for its
    // full form and vice versa.
    if (IsPartialToken(spoken)) {
      if (const Token* full = FullFormOf(spoken, distractor_pool)) {
        AddCandidate(cands, used, *full, jitter());
      }
    } else {
      const Token partial = PartialOf(spoken);
      if (std::binary_search(distractor_pool.begin(), distractor_pool.end(),
                             partial)) {
        AddCandidate(cands, used, partial, jitter());
      }
    }

    const int pool_size = static_cast<int>(distractor_pool.size());
    int guard = 0;
    while (static_cast<int>(cands.size()) < model.top_k_candidates &&
           guard++ < 8 * model.top_k_candidates) {
      const Token& pick =
          distractor_pool[static_cast<std::size_t>(
              rng.UniformInt(0, pool_size - 1))];
      AddCandidate(cands, used, pick, jitter());
    }
    out.steps.push_back(std::move(emission));
  }
  return out;
}

}  // namespace stutterlab
