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

#include <vector>

#include "doctest.h"
#include "perturbkit/errors.hpp"
#include "perturbkit/pos_tagger.hpp"
#include "test_util.hpp"

using namespace perturbkit;

TEST_SUITE("pos_tagger") {

TEST_CASE("normalize_word strips edge punctuation and lowercases") {
  CHECK(normalize_word("Girl,") == "girl");
  CHECK(normalize_word("\"Does!\"") == "does");
  CHECK(normalize_word("...") == "");
  CHECK(normalize_word("don't") == "don't");
  CHECK(normalize_word("UNK]") == "unk");
}

TEST_CASE("lexicon words get their listed tag") {
  const LexiconBundle lex = load_lexicon(testutil::lexicon_dir());
  const std::vector<std::string> tokens = {"a", "little", "girl", "does",
                                           "gymnastics"};
  const std::vector<TaggedToken> tagged = pos_tag(tokens, lex);
  REQUIRE(tagged.size() == 5);
  CHECK(tagged[0].tag == PosTag::kOther);
  CHECK(tagged[1].tag == PosTag::kJJ);
  CHECK(tagged[2].tag == PosTag::kNN);
  CHECK(tagged[3].tag == PosTag::kVB);
  CHECK(tagged[4].tag == PosTag::kNN);
  for (size_t i = 0; i < tokens.size(); ++i) {
    CHECK(tagged[i].token == tokens[i]);
  }
}

TEST_CASE("tagging sees through case and attached punctuation") {
  const LexiconBundle lex = load_lexicon(testutil::lexicon_dir());
  const std::vector<TaggedToken> tagged = pos_tag({"Girl,", "DOES."}, lex);
  CHECK(tagged[0].tag == PosTag::kNN);
  CHECK(tagged[1].tag == PosTag::kVB);
}

TEST_CASE("unknown words fall back to suffix rules, then NN") {
  const LexiconBundle lex = load_lexicon(testutil::lexicon_dir());
  const std::vector<TaggedToken> tagged =
      pos_tag({"blargly", "blarging", "blarged", "blarg"}, lex);
  CHECK(tagged[0].tag == PosTag::kRB);
  CHECK(tagged[1].tag == PosTag::kVB);
  CHECK(tagged[2].tag == PosTag::kVB);
  CHECK(tagged[3].tag == PosTag::kNN);
}

TEST_CASE("tag names round trip, unknown names throw") {
  for (const PosTag tag : {PosTag::kNN, PosTag::kVB, PosTag::kJJ, PosTag::kRB,
                           PosTag::kOther}) {
    CHECK(pos_tag_from_name(pos_tag_name(tag)) == tag);
  }
  CHECK_THROWS_AS(pos_tag_from_name("DT"), InvalidInput);
}

TEST_CASE("empty token sequences are rejected") {
  const LexiconBundle lex = load_lexicon(testutil::lexicon_dir());
  CHECK_THROWS_AS(pos_tag({}, lex), InvalidInput);
}

}  // TEST_SUITE("pos_tagger")
