// template_bank.hpp
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

#ifndef STUTTERLAB_TEMPLATE_BANK_HPP_
#define STUTTERLAB_TEMPLATE_BANK_HPP_

#include <vector>

#include "stutterlab/corpus.hpp"

namespace stutterlab {

// 54 voice-assistant query templates, 9 in each of 6 domains, 6 to 12
// tokens long, every intent label unique. Intent labels are domain
// scoped ("weather.current_city"), so a correct intent implies a correct
// domain.
const std::vector<QueryTemplate>& BuiltinTemplates();

// Conversational sentences disjoint in style from the query bank; held out
// of language model training to give perplexity a contrast set.
const std::vector<TokenSeq>& BuiltinOutOfDomainSentences();

}  // namespace stutterlab

#endif  // STUTTERLAB_TEMPLATE_BANK_HPP_
