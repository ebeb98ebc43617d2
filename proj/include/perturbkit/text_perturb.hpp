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

#ifndef PERTURBKIT_TEXT_PERTURB_HPP_
#define PERTURBKIT_TEXT_PERTURB_HPP_

#include <string>

#include "perturbkit/caption.hpp"
#include "perturbkit/lexicon.hpp"
#include "perturbkit/rng.hpp"

namespace perturbkit {

// Dropped tokens are always replaced by this literal, preserving length.
inline constexpr const char* kUnkToken = "[UNK]";

enum class DropMode {
  kNoNN,
  kNoVB,
  kNoNNVB,
  kNNOnly,
  kVBOnly,
  kNNVBOnly,
  kRandNN,
  kRandVB,
};

enum class PositionalMode { kDropFirst, kDropLast, kDropFirstLast, kShuffle };

enum class ChangeCharVariant {
  kTypos,
  kKeyboard,
  kSpellErr,
  kOcr,
  kPrefixSwap,
  kPunct,
};

enum class AddTextVariant { kAppendIrr, kInsertAdv };

enum class BiasVariant { kAllMale, kAllFemale, kGenderSwap, kGenderNeutral };

enum class SwapTextVariant {
  kSynWordNet,
  kSynWordEmbedding,
  kJJSwap,
  kNNSwap,
};

enum class TextStyleVariant { kTense, kReverseNeg, kPassive };

Caption apply_drop_text(const Caption& caption, DropMode mode, RngStream& rng,
                        const LexiconBundle& lex);
Caption apply_positional(const Caption& caption, PositionalMode mode,
                         RngStream& rng);
Caption apply_change_char(const Caption& caption, ChangeCharVariant variant,
                          RngStream& rng, const LexiconBundle& lex);
Caption apply_add_text(const Caption& caption, AddTextVariant variant,
                       RngStream& rng, const LexiconBundle& lex);
// Deterministic; no rng.
Caption apply_bias(const Caption& caption, BiasVariant variant,
                   const LexiconBundle& lex);
Caption apply_swap_text(const Caption& caption, SwapTextVariant variant,
                        RngStream& rng, const LexiconBundle& lex);
// Deterministic; no rng.
Caption apply_text_style(const Caption& caption, TextStyleVariant variant,
                         const LexiconBundle& lex);

// Dispatch by registry name (builtin perturbations only; plugin-backed names
// are rejected).
Caption apply_text_perturbation(const Caption& caption,
                                const std::string& name, RngStream& rng,
                                const LexiconBundle& lex);

}  // namespace perturbkit

#endif  // PERTURBKIT_TEXT_PERTURB_HPP_
