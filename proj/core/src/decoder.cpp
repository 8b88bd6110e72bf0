// decoder.cpp
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

#include "stutterlab/decoder.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "stutterlab/vocab.hpp"

namespace stutterlab {

namespace {

struct Partial {
  TokenSeq tokens;
  std::vector<int> ids;  // vocabulary ids of `tokens`, for LM context
  double am = 0.0;
  double lm = 0.0;
};

}  // namespace

void DecoderConfig::Validate() const {
  if (!(am_weight > 0.0)) {
    throw std::invalid_argument("am_weight must be positive");
  }
  if (insertion_penalty < 0.0) {
    throw std::invalid_argument("insertion_penalty must be non-negative");
  }
  if (beam_width < 1) throw std::invalid_argument("beam_width must be >= 1");
  if (!(pruning_threshold > 0.0)) {
    throw std::invalid_argument("pruning_threshold must be positive");
  }
  if (!(lattice_beam > 0.0)) {
    throw std::invalid_argument("lattice_beam must be positive");
  }
  if (nbest < 1) throw std::invalid_argument("nbest must be >= 1");
}

double CombinedScore(double am_logscore, double lm_logscore,
                     std::size_t num_tokens, const DecoderConfig& config) {
  return config.am_weight * am_logscore + lm_logscore -
         config.insertion_penalty * static_cast<double>(num_tokens);
}

std::vector<Hypothesis> Decode(const EmissionSequence& emissions,
                               const NGramModel& lm,
                               const DecoderConfig& config) {
  config.Validate();

  // Keyed by surface tokens: paths with the same transcript differ only in
  // where they spent <eps>, so keeping the best acoustic score per
  // transcript loses nothing.
  std::map<TokenSeq, Partial> beam;
  beam.emplace(TokenSeq{}, Partial{});

  for (const auto& step : emissions.steps) {
    int eps_entries = 0;
    for (const auto& [token, score] : step.candidates) {
      if (token == kEps) ++eps_entries;
    }
    if (eps_entries != 1) {
      throw std::invalid_argument(
          "each emission step needs exactly one <eps> candidate");
    }

    std::map<TokenSeq, Partial> next;
    auto offer = [&next, &config](Partial&& cand) {
      auto [it, inserted] = next.try_emplace(cand.tokens);
      if (inserted) {
        it->second = std::move(cand);
        return;
      }
      const Partial& have = it->second;
      if (CombinedScore(cand.am, cand.lm, cand.tokens.size(), config) >
          CombinedScore(have.am, have.lm, have.tokens.size(), config)) {
        it->second = std::move(cand);
      }
    };

    for (const auto& [tokens, partial] : beam) {
      for (const auto& [token, score] : step.candidates) {
        Partial cand = partial;
        cand.am += score;
        if (token != kEps) {
          const int id = lm.vocab().Id(token);
          cand.lm += lm.LogProbIds(cand.ids, id);
          cand.tokens.push_back(token);
          cand.ids.push_back(id);
        }
        offer(std::move(cand));
      }
    }

    // Histogram prune to beam_width, then score prune; both operate on the
    // combined partial score. std::map iteration already sorted the
    // transcripts, so stable_sort leaves ties lexicographic.
    std::vector<Partial> pool;
    pool.reserve(next.size());
    for (auto& [tokens, partial] : next) pool.push_back(std::move(partial));
    std::stable_sort(pool.begin(), pool.end(),
                     [&config](const Partial& a, const Partial& b) {
                       return CombinedScore(a.am, a.lm, a.tokens.size(),
                                            config) >
                              CombinedScore(b.am, b.lm, b.tokens.size(),
                                            config);
                     });
    if (static_cast<int>(pool.size()) > config.beam_width) {
      pool.resize(static_cast<std::size_t>(config.beam_width));
    }
    const double best = CombinedScore(pool.front().am, pool.front().lm,
                                      pool.front().tokens.size(), config);
    beam.clear();
    for (auto& partial : pool) {
      if (CombinedScore(partial.am, partial.lm, partial.tokens.size(),
                        config) >= best - config.pruning_threshold) {
        TokenSeq key = partial.tokens;
        beam.emplace(std::move(key), std::move(partial));
      }
    }
  }

  std::vector<Hypothesis> finals;
  finals.reserve(beam.size());
  for (const auto& [tokens, partial] : beam) {
    Hypothesis hyp;
    hyp.tokens = partial.tokens;
    hyp.am_logscore = partial.am;
    hyp.lm_logscore =
        partial.lm + lm.LogProbIds(partial.ids, Vocabulary::kEosId);
    hyp.combined_score =
        CombinedScore(hyp.am_logscore, hyp.lm_logscore, hyp.tokens.size(),
                      config);
    finals.push_back(std::move(hyp));
  }
  std::stable_sort(finals.begin(), finals.end(),
                   [](const Hypothesis& a, const Hypothesis& b) {
                     return a.combined_score > b.combined_score;
                   });
  const double best = finals.front().combined_score;
  std::vector<Hypothesis> out;
  for (auto& hyp : finals) {
    if (hyp.combined_score < best - config.lattice_beam) continue;
    out.push_back(std::move(hyp));
    if (static_cast<int>(out.size()) == config.nbest) break;
  }
  return out;
}

}  // namespace stutterlab
