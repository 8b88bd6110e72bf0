// tuner.cpp
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

#include "stutterlab/tuner.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "stutterlab/parallel.hpp"
#include "stutterlab/rng.hpp"

namespace stutterlab {

namespace {

// Alignment of the 1-best transcript for every utterance under one config.
std::vector<Alignment> DecodeAll(const std::vector<Utterance>& corpus,
                                 const std::vector<EmissionSequence>& emissions,
                                 const DecoderConfig& config,
                                 const NGramModel& lm, int workers) {
  std::vector<Alignment> alignments(corpus.size());
  ParallelFor(corpus.size(), workers, [&](std::size_t i) {
    const std::vector<Hypothesis> nbest =
        Decode(emissions[i], lm, config);
    alignments[i] = AlignTokens(corpus[i].intended, nbest.front().tokens);
  });
  return alignments;
}

double PooledIsWer(const std::vector<Alignment>& alignments,
                   const std::vector<std::size_t>& indices) {
  std::vector<Alignment> subset;
  subset.reserve(indices.size());
  for (std::size_t i : indices) subset.push_back(alignments[i]);
  return PooledErrorRates(subset).iswer;
}

bool SameConfig(const DecoderConfig& a, const DecoderConfig& b) {
  return a.am_weight == b.am_weight &&
         a.insertion_penalty == b.insertion_penalty &&
         a.beam_width == b.beam_width &&
         a.pruning_threshold == b.pruning_threshold &&
         a.lattice_beam == b.lattice_beam && a.nbest == b.nbest;
}

}  // namespace

std::vector<DecoderConfig> ParamGrid::Enumerate() const {
  if (am_weights.empty() || insertion_penalties.empty() ||
      beam_widths.empty() || pruning_thresholds.empty() ||
      lattice_beams.empty() || nbests.empty()) {
    throw std::invalid_argument("empty grid dimension");
  }
  std::vector<DecoderConfig> out;
  for (double am : am_weights) {
    for (double pen : insertion_penalties) {
      for (int beam : beam_widths) {
        for (double prune : pruning_thresholds) {
          for (double lattice : lattice_beams) {
            for (int nbest : nbests) {
              DecoderConfig config;
              config.am_weight = am;
              config.insertion_penalty = pen;
              config.beam_width = beam;
              config.pruning_threshold = prune;
              config.lattice_beam = lattice;
              config.nbest = nbest;
              config.Validate();
              out.push_back(config);
            }
          }
        }
      }
    }
  }
  return out;
}

bool ConfigPreferred(const DecoderConfig& a, const DecoderConfig& b) {
  if (a.insertion_penalty != b.insertion_penalty) {
    return a.insertion_penalty < b.insertion_penalty;
  }
  if (a.am_weight != b.am_weight) return a.am_weight > b.am_weight;
  if (a.beam_width != b.beam_width) return a.beam_width < b.beam_width;
  if (a.pruning_threshold != b.pruning_threshold) {
    return a.pruning_threshold < b.pruning_threshold;
  }
  if (a.lattice_beam != b.lattice_beam) return a.lattice_beam < b.lattice_beam;
  return a.nbest < b.nbest;
}

std::vector<Fold> MakeFolds(const std::vector<Utterance>& corpus,
                            const CvScheme& scheme) {
  if (corpus.empty()) throw std::invalid_argument("empty corpus");
  std::map<Grade, std::vector<std::string>> panels;
  {
    std::map<Grade, std::set<std::string>> seen;
    for (const auto& utt : corpus) seen[utt.grade].insert(utt.speaker_id);
    for (const auto& [grade, ids] : seen) {
      panels[grade] = {ids.begin(), ids.end()};
    }
  }
  auto collect = [&corpus](const std::set<std::string>& test_speakers) {
    Fold fold;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      if (test_speakers.count(corpus[i].speaker_id)) {
        fold.test.push_back(i);
      } else {
        fold.dev.push_back(i);
      }
    }
    return fold;
  };

  std::vector<Fold> folds;
  if (scheme.kind == SplitKind::kHoldout) {
    if (!(scheme.dev_fraction > 0.0) || !(scheme.dev_fraction < 1.0)) {
      throw std::invalid_argument("dev_fraction must be in (0, 1)");
    }
    std::set<std::string> test_speakers;
    for (auto& [grade, panel] : panels) {
      if (panel.size() < 2) {
        throw std::invalid_argument(
            "holdout needs at least two speakers per grade");
      }
      Rng rng(MixSeed(MixSeed(scheme.seed, "holdout"), GradeName(grade)));
      std::vector<std::string> shuffled = panel;
      rng.Shuffle(shuffled);
      const int dev_count = std::clamp<int>(
          static_cast<int>(std::floor(
              scheme.dev_fraction * static_cast<double>(panel.size()) + 0.5)),
          1, static_cast<int>(panel.size()) - 1);
      for (std::size_t i = static_cast<std::size_t>(dev_count);
           i < shuffled.size(); ++i) {
        test_speakers.insert(shuffled[i]);
      }
    }
    folds.push_back(collect(test_speakers));
  } else {
    std::size_t num_folds = 0;
    for (const auto& [grade, panel] : panels) {
      num_folds = std::max(num_folds, panel.size());
    }
    for (std::size_t f = 0; f < num_folds; ++f) {
      std::set<std::string> test_speakers;
      for (const auto& [grade, panel] : panels) {
        test_speakers.insert(panel[f % panel.size()]);
      }
      folds.push_back(collect(test_speakers));
    }
  }
  for (const auto& fold : folds) {
    if (fold.dev.empty() || fold.test.empty()) {
      throw std::runtime_error("degenerate fold");
    }
  }
  return folds;
}

TuneResult CrossValidate(const std::vector<Utterance>& corpus,
                         const std::vector<EmissionSequence>& emissions,
                         const ParamGrid& grid, const CvScheme& scheme,
                         const NGramModel& lm,
                         const DecoderConfig& default_config, int workers) {
  if (corpus.size() != emissions.size()) {
    throw std::invalid_argument("corpus and emissions differ in length");
  }
  const std::vector<DecoderConfig> configs = grid.Enumerate();
  const std::vector<Fold> folds = MakeFolds(corpus, scheme);

  // Each utterance appears in several folds; decode once per config and
  // pool alignments per fold afterwards.
  std::vector<std::vector<Alignment>> per_config(configs.size());
  for (std::size_t c = 0; c < configs.size(); ++c) {
    per_config[c] = DecodeAll(corpus, emissions, configs[c], lm, workers);
  }

  std::vector<std::size_t> all_dev;
  {
    std::set<std::size_t> dev_union;
    for (const auto& fold : folds) {
      dev_union.insert(fold.dev.begin(), fold.dev.end());
    }
    all_dev.assign(dev_union.begin(), dev_union.end());
  }

  TuneResult result;
  std::size_t best_index = 0;
  for (std::size_t c = 0; c < configs.size(); ++c) {
    const double dev_iswer = PooledIsWer(per_config[c], all_dev);
    result.grid.push_back({configs[c], dev_iswer});
    if (c == 0) continue;
    const GridPoint& incumbent = result.grid[best_index];
    if (dev_iswer < incumbent.dev_iswer ||
        (dev_iswer == incumbent.dev_iswer &&
         ConfigPreferred(configs[c], incumbent.config))) {
      best_index = c;
    }
  }
  result.best = configs[best_index];
  result.dev_iswer = result.grid[best_index].dev_iswer;

  std::vector<Alignment> default_alignments;
  {
    // Reuse the grid decode when the reference config sits on the grid.
    auto it = std::find_if(configs.begin(), configs.end(),
                           [&default_config](const DecoderConfig& c) {
                             return SameConfig(c, default_config);
                           });
    default_alignments =
        it == configs.end()
            ? DecodeAll(corpus, emissions, default_config, lm, workers)
            : per_config[static_cast<std::size_t>(it - configs.begin())];
  }

  std::vector<Alignment> pooled_test, pooled_default_test;
  for (const auto& fold : folds) {
    FoldOutcome outcome;
    std::size_t fold_best = 0;
    double fold_best_iswer = 0.0;
    for (std::size_t c = 0; c < configs.size(); ++c) {
      const double dev = PooledIsWer(per_config[c], fold.dev);
      if (c == 0 || dev < fold_best_iswer ||
          (dev == fold_best_iswer &&
           ConfigPreferred(configs[c], configs[fold_best]))) {
        fold_best = c;
        fold_best_iswer = dev;
      }
    }
    outcome.best = configs[fold_best];
    outcome.dev_iswer = fold_best_iswer;
    outcome.test_iswer = PooledIsWer(per_config[best_index], fold.test);
    outcome.default_test_iswer = PooledIsWer(default_alignments, fold.test);
    result.folds.push_back(outcome);
    for (std::size_t i : fold.test) {
      pooled_test.push_back(per_config[best_index][i]);
      pooled_default_test.push_back(default_alignments[i]);
    }
  }
  result.test_iswer = PooledErrorRates(pooled_test).iswer;
  result.default_test_iswer = PooledErrorRates(pooled_default_test).iswer;
  result.relative_improvement =
      RelativeImprovement(result.default_test_iswer, result.test_iswer);
  return result;
}

}  // namespace stutterlab
