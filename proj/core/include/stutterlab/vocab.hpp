// vocab.hpp
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

#ifndef STUTTERLAB_VOCAB_HPP_
#define STUTTERLAB_VOCAB_HPP_

#include <string>
#include <unordered_map>
#include <vector>

#include "stutterlab/tokens.hpp"

namespace stutterlab {

inline constexpr const char* kBos = "<s>";
inline constexpr const char* kEos = "</s>";
inline constexpr const char* kUnk = "<unk>";
inline constexpr const char* kEps = "<eps>";

// Closed symbol table: four reserved symbols at fixed indexes, then the
// distinct training tokens in lexicographic order. Lookup of an unknown
// token yields <unk>.
class Vocabulary {
 public:
  static constexpr int kBosId = 0;
  static constexpr int kEosId = 1;
  static constexpr int kUnkId = 2;
  static constexpr int kEpsId = 3;

  Vocabulary();

  // Builds from training text; duplicates are fine.
  static Vocabulary Build(const std::vector<TokenSeq>& transcripts);

  // Restores from a previously serialized symbol list. The list must start
  // with the four reserved symbols.
  static Vocabulary FromSymbols(const std::vector<std::string>& symbols);

  int Id(const Token& token) const;
  const std::string& Symbol(int id) const;
  bool Contains(const Token& token) const;
  int size() const { return static_cast<int>(symbols_.size()); }

  // Events are the predictable symbols: everything except <s> and <eps>.
  bool IsEvent(int id) const { return id != kBosId && id != kEpsId; }
  int num_events() const { return size() - 2; }

  const std::vector<std::string>& symbols() const { return symbols_; }

 private:
  std::vector<std::string> symbols_;
  std::unordered_map<std::string, int> index_;
};

}  // namespace stutterlab

#endif  // STUTTERLAB_VOCAB_HPP_
