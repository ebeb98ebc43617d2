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

#ifndef PERTURBKIT_CAPTION_HPP_
#define PERTURBKIT_CAPTION_HPP_

#include <string>
#include <vector>

namespace perturbkit {

// A caption paired to a clip. Tokens are whitespace-split with punctuation
// left attached, so join(tokens, " ") is the normalized text.
struct Caption {
  std::string clip_id;
  std::string text;
  std::vector<std::string> tokens;

  static Caption make(const std::string& clip_id, const std::string& text);

  // Rebuilds text from tokens (single spaces).
  void retokenize_text();

  bool operator==(const Caption&) const = default;
};

std::vector<std::string> split_whitespace(const std::string& s);
std::string join_tokens(const std::vector<std::string>& tokens);

}  // namespace perturbkit

#endif  // PERTURBKIT_CAPTION_HPP_
