// ngram.cpp
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

#include "stutterlab/ngram.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace stutterlab {

namespace {

constexpr double kMinAdjustedCount = 1e-6;
constexpr double kMinBackoffDenominator = 1e-12;

// Least squares fit of log N_r against log r. Returns false with fewer
// than two points.
bool FitLogLog(const std::map<int, long>& histogram, double* intercept,
               double* slope) {
  if (histogram.size() < 2) return false;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(histogram.size());
  for (const auto& [r, count] : histogram) {
    const double x = std::log(static_cast<double>(r));
    const double y = std::log(static_cast<double>(count));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) return false;
  *slope = (n * sxy - sx * sy) / denom;
  *intercept = (sy - *slope * sx) / n;
  return true;
}

}  // namespace

NGramModel NGramModel::Train(const std::vector<TokenSeq>& transcripts,
                             const NGramOptions& options) {
  if (transcripts.empty()) {
    throw std::invalid_argument("no training transcripts");
  }
  if (options.order < 1) throw std::invalid_argument("order must be >= 1");
  if (options.good_turing_cutoff < 1) {
    throw std::invalid_argument("cutoff must be >= 1");
  }
  if (options.max_unseen_fraction <= 0.0 ||
      options.max_unseen_fraction >= 1.0) {
    throw std::invalid_argument("max_unseen_fraction must be in (0, 1)");
  }
  NGramModel model;
  model.options_ = options;
  model.vocab_ = Vocabulary::Build(transcripts);
  model.num_events_ = model.vocab_.num_events();
  model.CountTranscripts(transcripts);
  model.Finalize();
  return model;
}

void NGramModel::CountTranscripts(const std::vector<TokenSeq>& transcripts) {
  const int order = options_.order;
  levels_.assign(order, Level());
  for (const auto& sentence : transcripts) {
    std::vector<int> ids;
    ids.reserve(sentence.size() + order);
    for (int i = 0; i < order - 1; ++i) ids.push_back(Vocabulary::kBosId);
    for (const auto& token : sentence) ids.push_back(vocab_.Id(token));
    ids.push_back(Vocabulary::kEosId);
    // Events start after the padding; each level sees every position with
    // its own context length.
    const std::size_t first_event = static_cast<std::size_t>(order - 1);
    for (std::size_t pos = first_event; pos < ids.size(); ++pos) {
      for (int level = 1; level <= order; ++level) {
        const std::size_t len = static_cast<std::size_t>(level - 1);
        std::vector<int> context(ids.begin() + (pos - len),
                                 ids.begin() + pos);
        ContextEntry& entry = levels_[level - 1][std::move(context)];
        entry.counts[ids[pos]] += 1;
        entry.total += 1;
      }
    }
  }
}

void NGramModel::Finalize() {
  const int order = options_.order;
  const int cutoff = options_.good_turing_cutoff;

  count_of_counts_.assign(order, {});
  for (int level = 1; level <= order; ++level) {
    auto& histogram = count_of_counts_[level - 1];
    for (const auto& [context, entry] : levels_[level - 1]) {
      for (const auto& [word, count] : entry.counts) histogram[count] += 1;
    }
  }

  adjusted_.assign(order, std::vector<double>(cutoff + 1, 0.0));
  for (int level = 1; level <= order; ++level) {
    const auto& histogram = count_of_counts_[level - 1];
    double intercept = 0.0, slope = 0.0;
    const bool have_fit = FitLogLog(histogram, &intercept, &slope);
    auto smoothed = [&](int r) -> double {
      auto it = histogram.find(r);
      if (it != histogram.end()) return static_cast<double>(it->second);
      if (!have_fit) return 0.0;
      return std::exp(intercept + slope * std::log(static_cast<double>(r)));
    };
    for (int r = 1; r <= cutoff; ++r) {
      const double nr = smoothed(r);
      const double nr1 = smoothed(r + 1);
      double star = static_cast<double>(r);
      if (nr > 0.0 && nr1 > 0.0) {
        star = (r + 1) * nr1 / nr;
        // Discounting must stay a discount: degenerate histograms can push
        // the estimate above r or to zero.
        star = std::clamp(star, kMinAdjustedCount, static_cast<double>(r));
      }
      adjusted_[level - 1][r] = star;
    }
  }

  // Bottom-up: alpha at level m needs probabilities from level m-1.
  for (int level = 1; level <= order; ++level) {
    for (auto& [context, entry] : levels_[level - 1]) {
      const double total = static_cast<double>(entry.total);
      long n1 = 0;
      for (const auto& [word, count] : entry.counts) {
        if (count == 1) ++n1;
      }
      const bool has_unseen =
          static_cast<int>(entry.counts.size()) < num_events_;
      if (!has_unseen) {
        entry.unseen_mass = 0.0;
      } else {
        const double mass =
            std::clamp(static_cast<double>(n1), options_.min_unseen_count,
                       options_.max_unseen_fraction * total);
        entry.unseen_mass = mass / total;
      }

      double seen_discounted = 0.0;
      double seen_lower = 0.0;
      const std::span<const int> ctx(context);
      const std::span<const int> lower_ctx =
          ctx.empty() ? ctx : ctx.subspan(1);
      for (const auto& [word, count] : entry.counts) {
        seen_discounted += AdjustedCount(level, count) / total;
        if (has_unseen) {
          seen_lower += ProbFromLevel(level - 1, lower_ctx, word);
        }
      }
      entry.beta = (1.0 - entry.unseen_mass) / seen_discounted;
      entry.alpha =
          has_unseen
              ? entry.unseen_mass /
                    std::max(kMinBackoffDenominator, 1.0 - seen_lower)
              : 0.0;
    }
  }
}

double NGramModel::AdjustedCount(int level, int r) const {
  if (level < 1 || level > options_.order) {
    throw std::out_of_range("level out of range");
  }
  if (r < 1) throw std::out_of_range("count must be positive");
  if (r > options_.good_turing_cutoff) return static_cast<double>(r);
  return adjusted_[level - 1][r];
}

long NGramModel::CountOfCounts(int level, int r) const {
  if (level < 1 || level > options_.order) {
    throw std::out_of_range("level out of range");
  }
  const auto& histogram = count_of_counts_[level - 1];
  auto it = histogram.find(r);
  return it == histogram.end() ? 0 : it->second;
}

double NGramModel::ProbFromLevel(int level, std::span<const int> context,
                                 int token_id) const {
  if (level == 0) return 1.0 / static_cast<double>(num_events_);
  const Level& table = levels_[level - 1];
  const std::vector<int> key(context.begin(), context.end());
  auto it = table.find(key);
  const std::span<const int> lower =
      context.empty() ? context : context.subspan(1);
  if (it == table.end()) {
    // Context never observed: defer entirely to the lower order.
    return ProbFromLevel(level - 1, lower, token_id);
  }
  const ContextEntry& entry = it->second;
  auto cit = entry.counts.find(token_id);
  if (cit != entry.counts.end()) {
    return entry.beta * AdjustedCount(level, cit->second) /
           static_cast<double>(entry.total);
  }
  return entry.alpha * ProbFromLevel(level - 1, lower, token_id);
}

std::vector<int> NGramModel::PaddedContext(
    std::span<const int> history) const {
  const std::size_t want = static_cast<std::size_t>(options_.order - 1);
  std::vector<int> context;
  context.reserve(want);
  if (history.size() >= want) {
    context.assign(history.end() - want, history.end());
  } else {
    context.assign(want - history.size(), Vocabulary::kBosId);
    context.insert(context.end(), history.begin(), history.end());
  }
  return context;
}

double NGramModel::LogProbIds(std::span<const int> history,
                              int token_id) const {
  if (token_id < 0 || token_id >= vocab_.size()) token_id = Vocabulary::kUnkId;
  if (!vocab_.IsEvent(token_id)) {
    throw std::invalid_argument("cannot score a non event symbol");
  }
  const std::vector<int> context = PaddedContext(history);
  return std::log(ProbFromLevel(options_.order, context, token_id));
}

double NGramModel::LogProb(std::span<const Token> history,
                           const Token& token) const {
  std::vector<int> ids;
  ids.reserve(history.size());
  for (const auto& t : history) ids.push_back(vocab_.Id(t));
  return LogProbIds(ids, vocab_.Id(token));
}

double NGramModel::SequenceLogProb(const TokenSeq& sentence) const {
  std::vector<int> ids;
  ids.reserve(sentence.size());
  double total = 0.0;
  for (const auto& token : sentence) {
    const int id = vocab_.Id(token);
    total += LogProbIds(ids, id);
    ids.push_back(id);
  }
  total += LogProbIds(ids, Vocabulary::kEosId);
  return total;
}

double NGramModel::Perplexity(const std::vector<TokenSeq>& sentences) const {
  if (sentences.empty()) throw std::invalid_argument("no sentences");
  double log_sum = 0.0;
  long n = 0;
  for (const auto& sentence : sentences) {
    log_sum += SequenceLogProb(sentence);
    n += static_cast<long>(sentence.size()) + 1;
  }
  return std::exp(-log_sum / static_cast<double>(n));
}

double NGramModel::UnseenMassOfHistory(
    std::span<const Token> history) const {
  std::vector<int> ids;
  ids.reserve(history.size());
  for (const auto& t : history) ids.push_back(vocab_.Id(t));
  const std::vector<int> context = PaddedContext(ids);
  const Level& table = levels_[options_.order - 1];
  auto it = table.find(context);
  if (it == table.end()) {
    throw std::invalid_argument("context not observed in training");
  }
  return it->second.unseen_mass;
}

void NGramModel::Save(const std::string& path) const {
  nlohmann::json root;
  root["format"] = "stutterlab-ngram";
  root["version"] = 1;
  root["order"] = options_.order;
  root["good_turing_cutoff"] = options_.good_turing_cutoff;
  root["min_unseen_count"] = options_.min_unseen_count;
  root["max_unseen_fraction"] = options_.max_unseen_fraction;
  root["symbols"] = vocab_.symbols();
  nlohmann::json levels = nlohmann::json::array();
  for (const auto& level : levels_) {
    nlohmann::json contexts = nlohmann::json::array();
    for (const auto& [context, entry] : level) {
      nlohmann::json counts = nlohmann::json::array();
      for (const auto& [word, count] : entry.counts) {
        counts.push_back({word, count});
      }
      contexts.push_back({context, std::move(counts)});
    }
    levels.push_back(std::move(contexts));
  }
  root["levels"] = std::move(levels);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << root.dump(2) << "\n";
}

NGramModel NGramModel::Load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  nlohmann::json root;
  try {
    in >> root;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  if (root.value("format", "") != "stutterlab-ngram" ||
      root.value("version", 0) != 1) {
    throw std::runtime_error(path + ": not a stutterlab-ngram v1 file");
  }
  NGramModel model;
  model.options_.order = root.at("order").get<int>();
  model.options_.good_turing_cutoff =
      root.at("good_turing_cutoff").get<int>();
  model.options_.min_unseen_count =
      root.at("min_unseen_count").get<double>();
  model.options_.max_unseen_fraction =
      root.at("max_unseen_fraction").get<double>();
  model.vocab_ =
      Vocabulary::FromSymbols(root.at("symbols").get<std::vector<std::string>>());
  model.num_events_ = model.vocab_.num_events();
  const auto& levels = root.at("levels");
  if (static_cast<int>(levels.size()) != model.options_.order) {
    throw std::runtime_error(path + ": level count does not match order");
  }
  model.levels_.assign(model.options_.order, Level());
  for (int level = 1; level <= model.options_.order; ++level) {
    for (const auto& ctx_entry : levels[level - 1]) {
      std::vector<int> context = ctx_entry.at(0).get<std::vector<int>>();
      if (static_cast<int>(context.size()) != level - 1) {
        throw std::runtime_error(path + ": context length mismatch");
      }
      ContextEntry entry;
      for (const auto& pair : ctx_entry.at(1)) {
        const int word = pair.at(0).get<int>();
        const int count = pair.at(1).get<int>();
        if (count <= 0) throw std::runtime_error(path + ": bad count");
        entry.counts[word] = count;
        entry.total += count;
      }
      model.levels_[level - 1].emplace(std::move(context), std::move(entry));
    }
  }
  model.Finalize();
  return model;
}

}  // namespace stutterlab
