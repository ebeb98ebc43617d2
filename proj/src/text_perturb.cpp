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

#include "perturbkit/text_perturb.hpp"

#include <algorithm>
#include <cctype>

#include "perturbkit/errors.hpp"
#include "perturbkit/pos_tagger.hpp"

namespace perturbkit {
namespace {

const char* const kPunctMarks[] = {",", ".", "!", "?", ";"};

Caption rebuild(const Caption& caption, std::vector<std::string> tokens) {
  Caption out;
  out.clip_id = caption.clip_id;
  out.tokens = std::move(tokens);
  out.retokenize_text();
  return out;
}

template <typename T>
const T& pick(RngStream& rng, const std::vector<T>& items) {
  return items[static_cast<size_t>(rng.uniform_below(items.size()))];
}

bool is_lower_alpha(char c) { return c >= 'a' && c <= 'z'; }

char to_lower_char(char c) {
  return static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
}

bool first_letter_upper(const std::string& word) {
  return !word.empty() && std::isupper(static_cast<unsigned char>(word[0]));
}

// Splits a token into (leading punctuation, core, trailing punctuation).
void split_core(const std::string& token, std::string& pre, std::string& core,
                std::string& post) {
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
  pre = token.substr(0, begin);
  core = token.substr(begin, end - begin);
  post = token.substr(end);
}

// Swaps a token's core for `replacement`, keeping surrounding punctuation and
// a capitalized first letter.
std::string replace_core(const std::string& token,
                         const std::string& replacement) {
  std::string pre, core, post;
  split_core(token, pre, core, post);
  if (core.empty()) return token;
  std::string cased = replacement;
  if (first_letter_upper(core) && !cased.empty()) {
    cased[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(cased[0])));
  }
  return pre + cased + post;
}

std::vector<size_t> alpha_positions(const std::string& word) {
  std::vector<size_t> positions;
  for (size_t i = 0; i < word.size(); ++i) {
    if (std::isalpha(static_cast<unsigned char>(word[i]))) positions.push_back(i);
  }
  return positions;
}

std::string typo_edit(const std::string& word, RngStream& rng) {
  const std::vector<size_t> alphas = alpha_positions(word);
  uint64_t op = rng.uniform_below(4);  // 0 insert, 1 delete, 2 swap, 3 replace
  // Single-character words cannot lose a letter or swap a pair; adjacent
  // equal characters make a swap a non-edit.
  std::vector<size_t> swaps;
  for (size_t i = 0; i + 1 < word.size(); ++i) {
    if (word[i] != word[i + 1]) swaps.push_back(i);
  }
  if (op == 1 && word.size() < 2) op = 3;
  if (op == 2 && swaps.empty()) op = 3;

  std::string out = word;
  switch (op) {
    case 0: {
      const size_t pos = static_cast<size_t>(rng.uniform_below(word.size() + 1));
      const char letter = static_cast<char>('a' + rng.uniform_below(26));
      out.insert(out.begin() + static_cast<ptrdiff_t>(pos), letter);
      break;
    }
    case 1: {
      const size_t pos = static_cast<size_t>(rng.uniform_below(word.size()));
      out.erase(out.begin() + static_cast<ptrdiff_t>(pos));
      break;
    }
    case 2: {
      const size_t pos = pick(rng, swaps);
      std::swap(out[pos], out[pos + 1]);
      break;
    }
    default: {
      const size_t pos = alphas.empty()
                             ? static_cast<size_t>(rng.uniform_below(word.size()))
                             : pick(rng, alphas);
      const char current = to_lower_char(out[pos]);
      char letter = static_cast<char>('a' + rng.uniform_below(25));
      if (is_lower_alpha(current) && letter >= current) {
        letter = static_cast<char>(letter + 1);
      }
      out[pos] = letter;
      break;
    }
  }
  return out;
}

std::vector<size_t> drop_indices(const std::vector<TaggedToken>& tagged,
                                 DropMode mode, RngStream& rng) {
  std::vector<size_t> drops;
  auto matches = [&](size_t i, PosTag want) { return tagged[i].tag == want; };
  switch (mode) {
    case DropMode::kNoNN:
    case DropMode::kNoVB:
    case DropMode::kNoNNVB:
      for (size_t i = 0; i < tagged.size(); ++i) {
        const bool nn = matches(i, PosTag::kNN);
        const bool vb = matches(i, PosTag::kVB);
        if ((mode == DropMode::kNoNN && nn) ||
            (mode == DropMode::kNoVB && vb) ||
            (mode == DropMode::kNoNNVB && (nn || vb))) {
          drops.push_back(i);
        }
      }
      break;
    case DropMode::kNNOnly:
    case DropMode::kVBOnly:
    case DropMode::kNNVBOnly:
      for (size_t i = 0; i < tagged.size(); ++i) {
        const bool nn = matches(i, PosTag::kNN);
        const bool vb = matches(i, PosTag::kVB);
        const bool keep = (mode == DropMode::kNNOnly && nn) ||
                          (mode == DropMode::kVBOnly && vb) ||
                          (mode == DropMode::kNNVBOnly && (nn || vb));
        if (!keep) drops.push_back(i);
      }
      break;
    case DropMode::kRandNN:
    case DropMode::kRandVB: {
      const PosTag want =
          mode == DropMode::kRandNN ? PosTag::kNN : PosTag::kVB;
      std::vector<size_t> pool;
      for (size_t i = 0; i < tagged.size(); ++i) {
        if (matches(i, want)) pool.push_back(i);
      }
      if (!pool.empty()) drops.push_back(pick(rng, pool));
      break;
    }
  }
  return drops;
}

}  // namespace

Caption apply_drop_text(const Caption& caption, DropMode mode, RngStream& rng,
                        const LexiconBundle& lex) {
  const std::vector<TaggedToken> tagged = pos_tag(caption.tokens, lex);
  std::vector<std::string> tokens = caption.tokens;
  for (size_t i : drop_indices(tagged, mode, rng)) tokens[i] = kUnkToken;
  return rebuild(caption, std::move(tokens));
}

Caption apply_positional(const Caption& caption, PositionalMode mode,
                         RngStream& rng) {
  if (caption.tokens.empty()) throw InvalidInput("positional: empty caption");
  std::vector<std::string> tokens = caption.tokens;
  switch (mode) {
    case PositionalMode::kDropFirst:
      tokens.front() = kUnkToken;
      break;
    case PositionalMode::kDropLast:
      tokens.back() = kUnkToken;
      break;
    case PositionalMode::kDropFirstLast:
      tokens.front() = kUnkToken;
      tokens.back() = kUnkToken;
      break;
    case PositionalMode::kShuffle:
      rng.shuffle(tokens);
      break;
  }
  return rebuild(caption, std::move(tokens));
}

Caption apply_change_char(const Caption& caption, ChangeCharVariant variant,
                          RngStream& rng, const LexiconBundle& lex) {
  if (caption.tokens.empty()) throw InvalidInput("change_char: empty caption");
  std::vector<std::string> tokens = caption.tokens;

  switch (variant) {
    case ChangeCharVariant::kTypos: {
      std::vector<size_t> candidates;
      for (size_t i = 0; i < tokens.size(); ++i) {
        if (!alpha_positions(tokens[i]).empty()) candidates.push_back(i);
      }
      if (candidates.empty()) break;
      const size_t idx = pick(rng, candidates);
      std::string pre, core, post;
      split_core(tokens[idx], pre, core, post);
      tokens[idx] = pre + typo_edit(core, rng) + post;
      break;
    }
    case ChangeCharVariant::kKeyboard: {
      std::vector<size_t> candidates;
      for (size_t i = 0; i < tokens.size(); ++i) {
        for (char c : tokens[i]) {
          if (lex.keyboard_adjacency.count(to_lower_char(c))) {
            candidates.push_back(i);
            break;
          }
        }
      }
      if (candidates.empty()) break;
      const size_t idx = pick(rng, candidates);
      std::string& word = tokens[idx];
      std::vector<size_t> positions;
      for (size_t i = 0; i < word.size(); ++i) {
        if (lex.keyboard_adjacency.count(to_lower_char(word[i]))) {
          positions.push_back(i);
        }
      }
      const size_t pos = pick(rng, positions);
      const std::string& neighbors =
          lex.keyboard_adjacency.at(to_lower_char(word[pos]));
      char neighbor = neighbors[static_cast<size_t>(
          rng.uniform_below(neighbors.size()))];
      if (std::isupper(static_cast<unsigned char>(word[pos]))) {
        neighbor = static_cast<char>(std::toupper(static_cast<unsigned char>(neighbor)));
      }
      word[pos] = neighbor;
      break;
    }
    case ChangeCharVariant::kSpellErr: {
      std::vector<size_t> candidates;
      for (size_t i = 0; i < tokens.size(); ++i) {
        if (lex.misspellings.count(normalize_word(tokens[i]))) {
          candidates.push_back(i);
        }
      }
      if (candidates.empty()) break;
      const size_t idx = pick(rng, candidates);
      const auto& variants = lex.misspellings.at(normalize_word(tokens[idx]));
      tokens[idx] = replace_core(tokens[idx], pick(rng, variants));
      break;
    }
    case ChangeCharVariant::kOcr: {
      auto confusable = [&](char c) {
        return lex.ocr_confusions.count(to_lower_char(c)) != 0;
      };
      std::vector<size_t> candidates;
      for (size_t i = 0; i < tokens.size(); ++i) {
        if (std::any_of(tokens[i].begin(), tokens[i].end(), confusable)) {
          candidates.push_back(i);
        }
      }
      if (candidates.empty()) break;
      const size_t idx = pick(rng, candidates);
      std::string& word = tokens[idx];
      std::string out;
      size_t replaced = 0;
      std::vector<size_t> sites;
      for (size_t i = 0; i < word.size(); ++i) {
        if (!confusable(word[i])) {
          out += word[i];
          continue;
        }
        sites.push_back(out.size());
        if (rng.uniform() < 0.3) {
          out += pick(rng, lex.ocr_confusions.at(to_lower_char(word[i])));
          ++replaced;
        } else {
          out += word[i];
        }
      }
      if (replaced == 0) {
        // Guarantee at least one confusion.
        const size_t site = pick(rng, sites);
        const char c = out[site];
        const std::string sub =
            pick(rng, lex.ocr_confusions.at(to_lower_char(c)));
        out = out.substr(0, site) + sub + out.substr(site + 1);
      }
      word = out;
      break;
    }
    case ChangeCharVariant::kPrefixSwap: {
      const std::vector<TaggedToken> tagged = pos_tag(tokens, lex);
      struct Swap {
        size_t idx;
        std::string word;
      };
      std::vector<Swap> swaps;
      for (size_t i = 0; i < tokens.size(); ++i) {
        const std::string core = normalize_word(tokens[i]);
        const std::string tag = pos_tag_name(tagged[i].tag);
        for (const std::string& old_prefix : lex.prefixes) {
          if (core.size() <= old_prefix.size() ||
              core.compare(0, old_prefix.size(), old_prefix) != 0) {
            continue;
          }
          for (const std::string& new_prefix : lex.prefixes) {
            if (new_prefix == old_prefix) continue;
            const std::string swapped =
                new_prefix + core.substr(old_prefix.size());
            const auto it = lex.pos_lexicon.find(swapped);
            if (it != lex.pos_lexicon.end() && it->second == tag) {
              swaps.push_back({i, swapped});
            }
          }
        }
      }
      if (swaps.empty()) break;  // The documented no-op fallback.
      const Swap& chosen = swaps[static_cast<size_t>(
          rng.uniform_below(swaps.size()))];
      tokens[chosen.idx] = replace_core(tokens[chosen.idx], chosen.word);
      break;
    }
    case ChangeCharVariant::kPunct: {
      const bool attach = rng.uniform() < 0.5;
      if (attach) {
        tokens.back() += kPunctMarks[static_cast<size_t>(
            rng.uniform_below(std::size(kPunctMarks)))];
      }
      const bool wrap = rng.uniform() < 0.5;
      if (wrap) {
        tokens.insert(tokens.begin(), "\"");
        tokens.push_back("\"");
      }
      if (!attach && !wrap) tokens.back() += ".";
      break;
    }
  }
  return rebuild(caption, std::move(tokens));
}

Caption apply_add_text(const Caption& caption, AddTextVariant variant,
                       RngStream& rng, const LexiconBundle& lex) {
  std::vector<std::string> tokens = caption.tokens;
  if (variant == AddTextVariant::kAppendIrr) {
    const std::string& phrase = pick(rng, lex.irrelevant_phrases);
    const std::vector<std::string> extra = split_whitespace(phrase);
    const bool prepend = rng.uniform() < 0.5;
    if (prepend) {
      tokens.insert(tokens.begin(), extra.begin(), extra.end());
    } else {
      tokens.insert(tokens.end(), extra.begin(), extra.end());
    }
  } else {
    const std::vector<TaggedToken> tagged = pos_tag(tokens, lex);
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (size_t i = 0; i < tokens.size(); ++i) {
      if (tagged[i].tag == PosTag::kVB) {
        out.push_back(pick(rng, lex.adverbs));
      }
      out.push_back(tokens[i]);
    }
    tokens = std::move(out);
  }
  return rebuild(caption, std::move(tokens));
}

Caption apply_bias(const Caption& caption, BiasVariant variant,
                   const LexiconBundle& lex) {
  const std::vector<TaggedToken> tagged = pos_tag(caption.tokens, lex);
  const GenderLexicon& g = lex.gender;
  std::vector<std::string> tokens = caption.tokens;

  auto next_is_noun = [&](size_t i) {
    return i + 1 < tagged.size() && tagged[i + 1].tag == PosTag::kNN;
  };
  auto lookup = [](const std::map<std::string, std::string>& map,
                   const std::string& word) -> const std::string* {
    const auto it = map.find(word);
    return it == map.end() ? nullptr : &it->second;
  };

  for (size_t i = 0; i < tokens.size(); ++i) {
    const std::string core = normalize_word(tokens[i]);
    if (core.empty()) continue;
    const std::string* repl = nullptr;
    std::string her_repl;
    switch (variant) {
      case BiasVariant::kAllMale:
        if (core == "her") {
          her_repl = next_is_noun(i) ? g.her_rules.to_male_before_noun
                                     : g.her_rules.to_male_otherwise;
          repl = &her_repl;
        } else {
          repl = lookup(g.female_to_male, core);
        }
        break;
      case BiasVariant::kAllFemale:
        repl = lookup(g.male_to_female, core);
        break;
      case BiasVariant::kGenderSwap:
        repl = lookup(g.male_to_female, core);
        if (!repl) {
          if (core == "her") {
            her_repl = next_is_noun(i) ? g.her_rules.to_male_before_noun
                                       : g.her_rules.to_male_otherwise;
            repl = &her_repl;
          } else {
            repl = lookup(g.female_to_male, core);
          }
        }
        break;
      case BiasVariant::kGenderNeutral:
        repl = lookup(g.male_to_neutral, core);
        if (!repl) {
          if (core == "her") {
            her_repl = next_is_noun(i) ? g.her_rules.to_neutral_before_noun
                                       : g.her_rules.to_neutral_otherwise;
            repl = &her_repl;
          } else {
            repl = lookup(g.female_to_neutral, core);
          }
        }
        break;
    }
    if (repl) tokens[i] = replace_core(tokens[i], *repl);
  }
  return rebuild(caption, std::move(tokens));
}

Caption apply_swap_text(const Caption& caption, SwapTextVariant variant,
                        RngStream& rng, const LexiconBundle& lex) {
  const std::vector<TaggedToken> tagged = pos_tag(caption.tokens, lex);
  std::vector<std::string> tokens = caption.tokens;

  if (variant == SwapTextVariant::kJJSwap ||
      variant == SwapTextVariant::kNNSwap) {
    const PosTag want =
        variant == SwapTextVariant::kJJSwap ? PosTag::kJJ : PosTag::kNN;
    const auto pool_it = lex.multipos_pools.find(pos_tag_name(want));
    if (pool_it == lex.multipos_pools.end() || pool_it->second.empty()) {
      return rebuild(caption, std::move(tokens));
    }
    std::vector<size_t> candidates;
    for (size_t i = 0; i < tokens.size(); ++i) {
      if (tagged[i].tag == want && !normalize_word(tokens[i]).empty()) {
        candidates.push_back(i);
      }
    }
    if (!candidates.empty()) {
      const size_t idx = pick(rng, candidates);
      tokens[idx] = replace_core(tokens[idx], pick(rng, pool_it->second));
    }
    return rebuild(caption, std::move(tokens));
  }

  std::vector<size_t> candidates;
  for (size_t i = 0; i < tokens.size(); ++i) {
    const std::string core = normalize_word(tokens[i]);
    if (core.empty()) continue;
    if (variant == SwapTextVariant::kSynWordNet) {
      const auto it = lex.synonyms.find(core);
      if (it == lex.synonyms.end()) continue;
      const auto tag_it = it->second.find(pos_tag_name(tagged[i].tag));
      if (tag_it != it->second.end() && !tag_it->second.empty()) {
        candidates.push_back(i);
      }
    } else {
      const auto it = lex.embedding_neighbors.find(core);
      if (it != lex.embedding_neighbors.end() && !it->second.empty()) {
        candidates.push_back(i);
      }
    }
  }
  if (!candidates.empty()) {
    const size_t idx = pick(rng, candidates);
    const std::string core = normalize_word(tokens[idx]);
    const std::vector<std::string>& options =
        variant == SwapTextVariant::kSynWordNet
            ? lex.synonyms.at(core).at(pos_tag_name(tagged[idx].tag))
            : lex.embedding_neighbors.at(core);
    tokens[idx] = replace_core(tokens[idx], pick(rng, options));
  }
  return rebuild(caption, std::move(tokens));
}

Caption apply_text_style(const Caption& caption, TextStyleVariant variant,
                         const LexiconBundle& lex) {
  const std::vector<TaggedToken> tagged = pos_tag(caption.tokens, lex);
  std::vector<std::string> tokens = caption.tokens;

  switch (variant) {
    case TextStyleVariant::kTense: {
      for (size_t i = 0; i < tokens.size(); ++i) {
        if (tagged[i].tag != PosTag::kVB) continue;
        const auto it = lex.tense_past.find(normalize_word(tokens[i]));
        if (it != lex.tense_past.end()) {
          tokens[i] = replace_core(tokens[i], it->second);
        }
      }
      break;
    }
    case TextStyleVariant::kReverseNeg: {
      size_t verb = tokens.size();
      for (size_t i = 0; i < tokens.size(); ++i) {
        if (tagged[i].tag == PosTag::kVB) {
          verb = i;
          break;
        }
      }
      if (verb == tokens.size()) break;
      if (verb + 1 < tokens.size() &&
          normalize_word(tokens[verb + 1]) == "not") {
        tokens.erase(tokens.begin() + static_cast<ptrdiff_t>(verb + 1));
      } else {
        tokens.insert(tokens.begin() + static_cast<ptrdiff_t>(verb + 1),
                      "not");
      }
      break;
    }
    case TextStyleVariant::kPassive: {
      size_t verb = tokens.size();
      for (size_t i = 0; i < tokens.size(); ++i) {
        if (tagged[i].tag == PosTag::kVB) {
          verb = i;
          break;
        }
      }
      if (verb == tokens.size() || verb == 0 || verb + 1 >= tokens.size()) {
        break;
      }
      const auto it = lex.participles.find(normalize_word(tokens[verb]));
      if (it == lex.participles.end()) break;
      std::vector<std::string> out(tokens.begin() + static_cast<ptrdiff_t>(verb + 1),
                                   tokens.end());
      out.push_back("is");
      out.push_back(it->second);
      out.push_back("by");
      out.insert(out.end(), tokens.begin(),
                 tokens.begin() + static_cast<ptrdiff_t>(verb));
      tokens = std::move(out);
      break;
    }
  }
  return rebuild(caption, std::move(tokens));
}

Caption apply_text_perturbation(const Caption& caption,
                                const std::string& name, RngStream& rng,
                                const LexiconBundle& lex) {
  if (name == "NoNN") return apply_drop_text(caption, DropMode::kNoNN, rng, lex);
  if (name == "NoVB") return apply_drop_text(caption, DropMode::kNoVB, rng, lex);
  if (name == "NoNN&VB")
    return apply_drop_text(caption, DropMode::kNoNNVB, rng, lex);
  if (name == "NNOnly")
    return apply_drop_text(caption, DropMode::kNNOnly, rng, lex);
  if (name == "VBOnly")
    return apply_drop_text(caption, DropMode::kVBOnly, rng, lex);
  if (name == "NN&VBOnly")
    return apply_drop_text(caption, DropMode::kNNVBOnly, rng, lex);
  if (name == "RandNN")
    return apply_drop_text(caption, DropMode::kRandNN, rng, lex);
  if (name == "RandVB")
    return apply_drop_text(caption, DropMode::kRandVB, rng, lex);

  if (name == "DropFirst")
    return apply_positional(caption, PositionalMode::kDropFirst, rng);
  if (name == "DropLast")
    return apply_positional(caption, PositionalMode::kDropLast, rng);
  if (name == "DropFirstLast")
    return apply_positional(caption, PositionalMode::kDropFirstLast, rng);
  if (name == "ShuffleOrder")
    return apply_positional(caption, PositionalMode::kShuffle, rng);

  if (name == "Typos")
    return apply_change_char(caption, ChangeCharVariant::kTypos, rng, lex);
  if (name == "Keyboard")
    return apply_change_char(caption, ChangeCharVariant::kKeyboard, rng, lex);
  if (name == "SpellErr")
    return apply_change_char(caption, ChangeCharVariant::kSpellErr, rng, lex);
  if (name == "OCR")
    return apply_change_char(caption, ChangeCharVariant::kOcr, rng, lex);
  if (name == "PrefixSwap")
    return apply_change_char(caption, ChangeCharVariant::kPrefixSwap, rng, lex);
  if (name == "Punct")
    return apply_change_char(caption, ChangeCharVariant::kPunct, rng, lex);

  if (name == "AppendIrr")
    return apply_add_text(caption, AddTextVariant::kAppendIrr, rng, lex);
  if (name == "InsertAdv")
    return apply_add_text(caption, AddTextVariant::kInsertAdv, rng, lex);

  if (name == "AllMale") return apply_bias(caption, BiasVariant::kAllMale, lex);
  if (name == "AllFemale")
    return apply_bias(caption, BiasVariant::kAllFemale, lex);
  if (name == "GenderSwap")
    return apply_bias(caption, BiasVariant::kGenderSwap, lex);
  if (name == "GenderNeutral")
    return apply_bias(caption, BiasVariant::kGenderNeutral, lex);

  if (name == "SynWordNet")
    return apply_swap_text(caption, SwapTextVariant::kSynWordNet, rng, lex);
  if (name == "SynWordEmbd")
    return apply_swap_text(caption, SwapTextVariant::kSynWordEmbedding, rng,
                           lex);
  if (name == "JJSwap")
    return apply_swap_text(caption, SwapTextVariant::kJJSwap, rng, lex);
  if (name == "NNSwap")
    return apply_swap_text(caption, SwapTextVariant::kNNSwap, rng, lex);

  if (name == "Tense")
    return apply_text_style(caption, TextStyleVariant::kTense, lex);
  if (name == "ReverseNeg")
    return apply_text_style(caption, TextStyleVariant::kReverseNeg, lex);
  if (name == "Passive")
    return apply_text_style(caption, TextStyleVariant::kPassive, lex);

  throw UnknownPerturbation("no builtin text perturbation named \"" + name +
                            "\"");
}

}  // namespace perturbkit
