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

#include "perturbkit/lexicon.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "perturbkit/errors.hpp"
#include "perturbkit/rng.hpp"

namespace perturbkit {
namespace {

using nlohmann::json;

const char* const kLexiconFiles[] = {
    "adverbs.json",          "embedding_neighbors.json",
    "gender_map.json",       "irrelevant_phrases.json",
    "keyboard_adjacency.json", "misspellings.json",
    "multipos.json",         "ocr_confusions.json",
    "pos_lexicon.json",      "prefixes.json",
    "suffix_rules.json",     "synonyms.json",
    "tense.json",
};

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("missing lexicon file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse(const std::filesystem::path& path, const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw IoError("malformed lexicon file " + path.string() + ": " + e.what());
  }
}

char single_char_key(const std::string& key,
                     const std::filesystem::path& path) {
  if (key.size() != 1) {
    throw IoError("non-single-character key \"" + key + "\" in " +
                  path.string());
  }
  return key[0];
}

}  // namespace

std::filesystem::path default_lexicon_dir() {
  if (const char* env = std::getenv("PERTURBKIT_LEXICON"); env && *env) {
    return env;
  }
  return "data/lexicon";
}

LexiconBundle load_lexicon(const std::filesystem::path& dir) {
  LexiconBundle lex;

  // Version digest over every (name, contents) pair in sorted name order.
  std::string combined;
  for (const char* name : kLexiconFiles) {
    combined += name;
    combined += '\n';
    combined += slurp(dir / name);
  }
  const uint64_t hash = fnv1a64(combined);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "lex-%016llx",
                static_cast<unsigned long long>(hash));
  lex.version = buf;

  {
    const auto path = dir / "keyboard_adjacency.json";
    const json j = parse(path, slurp(path));
    for (const auto& [key, value] : j.at("adjacency").items()) {
      lex.keyboard_adjacency[single_char_key(key, path)] =
          value.get<std::string>();
    }
  }
  {
    const auto path = dir / "ocr_confusions.json";
    const json j = parse(path, slurp(path));
    for (const auto& [key, value] : j.at("confusions").items()) {
      lex.ocr_confusions[single_char_key(key, path)] =
          value.get<std::vector<std::string>>();
    }
  }
  {
    const auto path = dir / "misspellings.json";
    const json j = parse(path, slurp(path));
    for (const auto& [key, value] : j.at("variants").items()) {
      lex.misspellings[key] = value.get<std::vector<std::string>>();
    }
  }
  {
    const auto path = dir / "gender_map.json";
    const json j = parse(path, slurp(path));
    for (const auto& triple : j.at("triples")) {
      const auto male = triple.at(0).get<std::string>();
      const auto female = triple.at(1).get<std::string>();
      const auto neutral = triple.at(2).get<std::string>();
      lex.gender.male_to_female[male] = female;
      lex.gender.male_to_neutral[male] = neutral;
      if (female != "her") {
        lex.gender.female_to_male[female] = male;
        lex.gender.female_to_neutral[female] = neutral;
      }
    }
    const json& rules = j.at("her_rules");
    lex.gender.her_rules.to_male_before_noun =
        rules.at("to_male_before_noun").get<std::string>();
    lex.gender.her_rules.to_male_otherwise =
        rules.at("to_male_otherwise").get<std::string>();
    lex.gender.her_rules.to_neutral_before_noun =
        rules.at("to_neutral_before_noun").get<std::string>();
    lex.gender.her_rules.to_neutral_otherwise =
        rules.at("to_neutral_otherwise").get<std::string>();
  }
  {
    const auto path = dir / "synonyms.json";
    const json j = parse(path, slurp(path));
    for (const auto& [word, tags] : j.at("entries").items()) {
      for (const auto& [tag, syns] : tags.items()) {
        lex.synonyms[word][tag] = syns.get<std::vector<std::string>>();
      }
    }
  }
  {
    const auto path = dir / "embedding_neighbors.json";
    const json j = parse(path, slurp(path));
    for (const auto& [word, nbrs] : j.at("neighbors").items()) {
      lex.embedding_neighbors[word] = nbrs.get<std::vector<std::string>>();
    }
  }
  {
    const auto path = dir / "adverbs.json";
    lex.adverbs = parse(path, slurp(path))
                      .at("adverbs")
                      .get<std::vector<std::string>>();
  }
  {
    const auto path = dir / "irrelevant_phrases.json";
    lex.irrelevant_phrases = parse(path, slurp(path))
                                 .at("phrases")
                                 .get<std::vector<std::string>>();
  }
  {
    const auto path = dir / "prefixes.json";
    lex.prefixes = parse(path, slurp(path))
                       .at("prefixes")
                       .get<std::vector<std::string>>();
  }
  {
    const auto path = dir / "pos_lexicon.json";
    const json j = parse(path, slurp(path));
    for (const auto& [word, tag] : j.at("words").items()) {
      lex.pos_lexicon[word] = tag.get<std::string>();
    }
  }
  {
    const auto path = dir / "suffix_rules.json";
    const json j = parse(path, slurp(path));
    for (const auto& rule : j.at("rules")) {
      lex.suffix_rules.emplace_back(rule.at(0).get<std::string>(),
                                    rule.at(1).get<std::string>());
    }
  }
  {
    const auto path = dir / "tense.json";
    const json j = parse(path, slurp(path));
    for (const auto& [word, past] : j.at("past").items()) {
      lex.tense_past[word] = past.get<std::string>();
    }
    for (const auto& [word, part] : j.at("participle").items()) {
      lex.participles[word] = part.get<std::string>();
    }
  }
  {
    const auto path = dir / "multipos.json";
    const json j = parse(path, slurp(path));
    for (const auto& [tag, pool] : j.at("pools").items()) {
      lex.multipos_pools[tag] = pool.get<std::vector<std::string>>();
    }
  }
  return lex;
}

}  // namespace perturbkit
