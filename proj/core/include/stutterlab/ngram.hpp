// ngram.hpp
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
// Backoff n-gram language model with Good-Turing discounting.
//
// Counts with r <= cutoff are discounted to r* = (r+1) N_{r+1} / N_r. When
// a needed count-of-counts bucket is empty, N_r is taken from a log-log
// regression over the observed buckets; with fewer than two observed
// buckets the count is left undiscounted. Each context reserves
// N_1(c)/N(c) probability mass (floored and capped, see NGramOptions) for
// events unseen in that context; the reserved mass is spread over unseen
// events in proportion to the next lower order model, Katz style. Below
// unigrams sits the uniform distribution over events. Events are every
// symbol except <s> and <eps>, so </s> and <unk> both carry probability
// and every conditional sums to one.

#ifndef STUTTERLAB_NGRAM_HPP_
#define STUTTERLAB_NGRAM_HPP_

#include <map>
#include <span>
#include <string>
#include <vector>

#include "stutterlab/tokens.hpp"
#include "stutterlab/vocab.hpp"

namespace stutterlab {

struct NGramOptions {
  int order = 3;
  int good_turing_cutoff = 5;
  // Unseen mass per context is clamp(N_1(c), floor, cap * N(c)) / N(c).
  // The floor keeps <unk> reachable when every gram repeats; the cap keeps
  // seen grams above zero when every gram is a singleton.
  double min_unseen_count = 0.5;
  double max_unseen_fraction = 0.9;
};

class NGramModel {
 public:
  // Trains on tokenized sentences (without <s>/</s> markers; those are
  // added internally). Throws std::invalid_argument on empty input or on
  // reserved symbols in the text.
  static NGramModel Train(const std::vector<TokenSeq>& transcripts,
                          const NGramOptions& options = NGramOptions());

  // Natural log P(token | history). `history` is the full preceding token
  // sequence of the sentence; it is <s>-padded and truncated to order-1
  // internally. Out of vocabulary tokens map to <unk> on both sides.
  double LogProb(std::span<const Token> history, const Token& token) const;

  // Sum of LogProb over the sentence plus the end marker.
  double SequenceLogProb(const TokenSeq& sentence) const;

  // exp(-(1/N) sum log P) with N = total tokens plus one end marker per
  // sentence.
  double Perplexity(const std::vector<TokenSeq>& sentences) const;

  // Id based fast path; `history` holds vocabulary ids of the preceding
  // tokens, `token_id` the predicted event.
  double LogProbIds(std::span<const int> history, int token_id) const;

  void Save(const std::string& path) const;
  static NGramModel Load(const std::string& path);

  const Vocabulary& vocab() const { return vocab_; }
  const NGramOptions& options() const { return options_; }
  int order() const { return options_.order; }

  // Introspection for tests. Levels are 1-based (1 = unigram).
  long CountOfCounts(int level, int r) const;
  double AdjustedCount(int level, int r) const;
  double UnseenMassOfHistory(std::span<const Token> history) const;

 private:
  struct ContextEntry {
    std::map<int, int> counts;
    long total = 0;
    double unseen_mass = 0.0;
    double beta = 1.0;   // scale on discounted seen probabilities
    double alpha = 0.0;  // scale on lower order probabilities
  };
  using Level = std::map<std::vector<int>, ContextEntry>;

  NGramModel() = default;

  void CountTranscripts(const std::vector<TokenSeq>& transcripts);
  void Finalize();
  double ProbFromLevel(int level, std::span<const int> context,
                       int token_id) const;
  std::vector<int> PaddedContext(std::span<const int> history) const;

  Vocabulary vocab_;
  NGramOptions options_;
  std::vector<Level> levels_;                       // [order]
  std::vector<std::map<int, long>> count_of_counts_;  // per level
  std::vector<std::vector<double>> adjusted_;       // per level, index r
  int num_events_ = 0;
};

}  // namespace stutterlab

#endif  // STUTTERLAB_NGRAM_HPP_
