// scoring.cpp
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

#include "stutterlab/scoring.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace stutterlab {

namespace {

// Operation codes stored per DP cell; preference order for equal cost is
// match, substitute, delete, insert.
enum Back : unsigned char { kFromMatch, kFromSub, kFromDel, kFromIns };

}  // namespace

Alignment AlignTokens(const TokenSeq& ref_raw, const TokenSeq& hyp_raw) {
  const TokenSeq ref = NormalizeTokens(ref_raw);
  const TokenSeq hyp = NormalizeTokens(hyp_raw);
  if (ref.empty()) {
    throw std::invalid_argument("reference transcript is empty");
  }
  const std::size_t n = ref.size();
  const std::size_t m = hyp.size();

  std::vector<int> cost((n + 1) * (m + 1), 0);
  std::vector<unsigned char> back((n + 1) * (m + 1), kFromDel);
  auto at = [m](std::size_t i, std::size_t j) { return i * (m + 1) + j; };

  for (std::size_t i = 1; i <= n; ++i) {
    cost[at(i, 0)] = static_cast<int>(i);
    back[at(i, 0)] = kFromDel;
  }
  for (std::size_t j = 1; j <= m; ++j) {
    cost[at(0, j)] = static_cast<int>(j);
    back[at(0, j)] = kFromIns;
  }
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const bool equal = ref[i - 1] == hyp[j - 1];
      const int diag = cost[at(i - 1, j - 1)] + (equal ? 0 : 1);
      const int up = cost[at(i - 1, j)] + 1;
      const int left = cost[at(i, j - 1)] + 1;
      int best = diag;
      unsigned char op = equal ? kFromMatch : kFromSub;
      if (up < best) {
        best = up;
        op = kFromDel;
      }
      if (left < best) {
        best = left;
        op = kFromIns;
      }
      cost[at(i, j)] = best;
      back[at(i, j)] = op;
    }
  }

  Alignment out;
  out.ref_len = static_cast<int>(n);
  out.hyp_len = static_cast<int>(m);
  std::size_t i = n, j = m;
  while (i > 0 || j > 0) {
    switch (back[at(i, j)]) {
      case kFromMatch:
        out.ops.push_back({EditOp::kMatch, static_cast<int>(i - 1),
                           static_cast<int>(j - 1)});
        ++out.matches;
        --i;
        --j;
        break;
      case kFromSub:
        out.ops.push_back({EditOp::kSubstitute, static_cast<int>(i - 1),
                           static_cast<int>(j - 1)});
        ++out.substitutions;
        --i;
        --j;
        break;
      case kFromDel:
        out.ops.push_back({EditOp::kDelete, static_cast<int>(i - 1), -1});
        ++out.deletions;
        --i;
        break;
      case kFromIns:
        out.ops.push_back({EditOp::kInsert, -1, static_cast<int>(j - 1)});
        ++out.insertions;
        --j;
        break;
    }
  }
  std::reverse(out.ops.begin(), out.ops.end());
  return out;
}

ErrorRates PooledErrorRates(std::span<const Alignment> alignments) {
  ErrorRates out;
  for (const auto& a : alignments) {
    out.insertions += a.insertions;
    out.deletions += a.deletions;
    out.substitutions += a.substitutions;
    out.matches += a.matches;
    out.ref_tokens += a.ref_len;
    ++out.utterances;
  }
  if (out.ref_tokens == 0) {
    throw std::invalid_argument("no reference tokens to score");
  }
  const double denom = static_cast<double>(out.ref_tokens);
  out.insertion_rate = 100.0 * static_cast<double>(out.insertions) / denom;
  out.deletion_rate = 100.0 * static_cast<double>(out.deletions) / denom;
  out.substitution_rate =
      100.0 * static_cast<double>(out.substitutions) / denom;
  out.iswer = out.insertion_rate + out.deletion_rate + out.substitution_rate;
  return out;
}

std::map<std::string, ErrorRates> GroupedErrorRates(
    std::span<const std::string> keys,
    std::span<const Alignment> alignments) {
  if (keys.size() != alignments.size()) {
    throw std::invalid_argument("keys and alignments differ in length");
  }
  std::map<std::string, std::vector<Alignment>> grouped;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    grouped[keys[i]].push_back(alignments[i]);
  }
  std::map<std::string, ErrorRates> out;
  for (const auto& [key, group] : grouped) {
    out.emplace(key, PooledErrorRates(group));
  }
  return out;
}

double RelativeImprovement(double baseline, double improved) {
  if (baseline == 0.0) {
    throw std::invalid_argument("baseline rate is zero");
  }
  return 100.0 * (baseline - improved) / baseline;
}

WordCountStats WordCountAnalysis(std::span<const Alignment> alignments) {
  WordCountStats out;
  double sum_correct = 0.0, sum_incorrect = 0.0;
  for (const auto& a : alignments) {
    if (a.Correct()) {
      sum_correct += a.ref_len;
      ++out.num_correct;
    } else {
      sum_incorrect += a.ref_len;
      ++out.num_incorrect;
    }
  }
  if (out.num_correct > 0) {
    out.mean_len_correct = sum_correct / static_cast<double>(out.num_correct);
  }
  if (out.num_incorrect > 0) {
    out.mean_len_incorrect =
        sum_incorrect / static_cast<double>(out.num_incorrect);
  }
  return out;
}

}  // namespace stutterlab
