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

#include "perturbkit/pos_tagger.hpp"

#include <cctype>

#include "perturbkit/errors.hpp"

namespace perturbkit {

std::string pos_tag_name(PosTag tag) {
  switch (tag) {
    case PosTag::kNN:
      return "NN";
    case PosTag::kVB:
      return "VB";
    case PosTag::kJJ:
      return "JJ";
    case PosTag::kRB:
      return "RB";
    case PosTag::kOther:
      return "OTHER";
  }
  return "?";
}

PosTag pos_tag_from_name(const std::string& name) {
  if (name == "NN") return PosTag::kNN;
  if (name == "VB") return PosTag::kVB;
  if (name == "JJ") return PosTag::kJJ;
  if (name == "RB") return PosTag::kRB;
  if (name == "OTHER") return PosTag::kOther;
  throw InvalidInput("unknown POS tag name: " + name);
}

std::string normalize_word(const std::string& token) {
  size_t begin = 0;
  size_t end = token.size();
  while (begin < end &&
         !std::isalnum(static_cast<unsigned char>(token[begin]))) {
    ++begin;
  }
  while (end > begin &&
         !std::isalnum(static_cast<unsigned char>(token[end - 1]))) {
    --end;
  }
  std::string out = token.substr(begin, end - begin);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::vector<TaggedToken> pos_tag(const std::vector<std::string>& tokens,
                                 const LexiconBundle& lex) {
  if (tokens.empty()) throw InvalidInput("pos_tag: empty token sequence");
  std::vector<TaggedToken> tagged;
  tagged.reserve(tokens.size());
  for (const std::string& token : tokens) {
    const std::string word = normalize_word(token);
    PosTag tag = PosTag::kNN;
    if (const auto it = lex.pos_lexicon.find(word);
        it != lex.pos_lexicon.end()) {
      tag = pos_tag_from_name(it->second);
    } else {
      for (const auto& [suffix, tag_name] : lex.suffix_rules) {
        if (word.size() > suffix.size() &&
            word.compare(word.size() - suffix.size(), suffix.size(), suffix) ==
                0) {
          tag = pos_tag_from_name(tag_name);
          break;
        }
      }
    }
    tagged.push_back({token, tag});
  }
  return tagged;
}

}  // namespace perturbkit
