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

#ifndef PERTURBKIT_LEXICON_HPP_
#define PERTURBKIT_LEXICON_HPP_

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace perturbkit {

// Resolution of the positionally-ambiguous "her" when mapping away from
// female forms: possessive before a noun, objective otherwise.
struct HerRules {
  std::string to_male_before_noun = "his";
  std::string to_male_otherwise = "him";
  std::string to_neutral_before_noun = "their";
  std::string to_neutral_otherwise = "them";
};

struct GenderLexicon {
  std::map<std::string, std::string> male_to_female;
  std::map<std::string, std::string> female_to_male;  // "her" excluded
  std::map<std::string, std::string> male_to_neutral;
  std::map<std::string, std::string> female_to_neutral;  // "her" excluded
  HerRules her_rules;
};

struct LexiconBundle {
  std::map<char, std::string> keyboard_adjacency;
  std::map<char, std::vector<std::string>> ocr_confusions;
  std::map<std::string, std::vector<std::string>> misspellings;
  GenderLexicon gender;
  // word -> tag name -> synonyms
  std::map<std::string, std::map<std::string, std::vector<std::string>>>
      synonyms;
  std::map<std::string, std::vector<std::string>> embedding_neighbors;
  std::vector<std::string> adverbs;
  std::vector<std::string> irrelevant_phrases;
  std::vector<std::string> prefixes;
  std::map<std::string, std::string> pos_lexicon;
  std::vector<std::pair<std::string, std::string>> suffix_rules;
  std::map<std::string, std::string> tense_past;
  std::map<std::string, std::string> participles;
  std::map<std::string, std::vector<std::string>> multipos_pools;

  // FNV-1a over every lexicon file (sorted by name), recorded in output
  // sidecars for provenance.
  std::string version;
};

// Loads all lexicon files from a directory; throws IoError on missing or
// malformed files.
LexiconBundle load_lexicon(const std::filesystem::path& dir);

// PERTURBKIT_LEXICON env var if set, else ./data/lexicon.
std::filesystem::path default_lexicon_dir();

}  // namespace perturbkit

#endif  // PERTURBKIT_LEXICON_HPP_
