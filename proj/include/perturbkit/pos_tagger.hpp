// Copyright (c) the Perturbkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PERTURBKIT_POS_TAGGER_HPP_
#define PERTURBKIT_POS_TAGGER_HPP_

#include <string>
#include <vector>

#include "perturbkit/lexicon.hpp"

namespace perturbkit {

enum class PosTag { kNN, kVB, kJJ, kRB, kOther };

struct TaggedToken {
  std::string token;
  PosTag tag = PosTag::kNN;
};

std::string pos_tag_name(PosTag tag);
PosTag pos_tag_from_name(const std::string& name);

// Deterministic rule tagger: lowercased lexicon lookup (surrounding
// punctuation stripped), then suffix rules, then NN.
std::vector<TaggedToken> pos_tag(const std::vector<std::string>& tokens,
                                 const LexiconBundle& lex);

// Lowercases and strips leading/trailing non-alphanumeric characters; the
// normalization used for every lexicon lookup.
std::string normalize_word(const std::string& token);

}  // namespace perturbkit

#endif  // PERTURBKIT_POS_TAGGER_HPP_
