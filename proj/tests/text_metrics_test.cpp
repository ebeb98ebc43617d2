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

#include <cmath>
#include <string>

#include "doctest.h"
#include "perturbkit/caption.hpp"
#include "perturbkit/errors.hpp"
#include "perturbkit/metrics.hpp"

using namespace perturbkit;

namespace {

struct TextMetricFixture {
  const char* candidate;
  const char* reference;
  double bleu4;
  double rouge_l_f1;
  double meteor_lite;
};

// Generated by tests/support/gen_text_metric_oracle.py; do not
// edit by hand.
constexpr TextMetricFixture kTextMetricFixtures[] = {
    {"a little girl does gymnastics",
     "a little girl does gymnastics",
     1.0, 1.0, 1.0},
    {"a little girl does [UNK]",
     "a little girl does gymnastics",
     0.668740304976422, 0.8, 0.8},
    {"a little [UNK] does [UNK]",
     "a little girl does gymnastics",
     0.0, 0.6, 0.6},
    {"[UNK] [UNK] girl does gymnastics",
     "a little girl does gymnastics",
     0.0, 0.6, 0.6},
    {"a girl gymnastics does little",
     "a little girl does gymnastics",
     0.0, 0.6, 1.0},
    {"a little boy does gymnastics",
     "a little girl does gymnastics",
     0.0, 0.8, 0.8},
    {"gymnastics is done by a little girl",
     "a little girl does gymnastics",
     0.0, 0.5, 0.7692307692307693},
    {"a little girl did gymnastics",
     "a little girl does gymnastics",
     0.0, 0.8, 0.8},
    {"a little girl does not gymnastics",
     "a little girl does gymnastics",
     0.537284965911771, 0.9090909090909091, 0.9803921568627451},
    {"On this occasion, a little girl does gymnastics",
     "a little girl does gymnastics",
     0.5169731539571706, 0.7692307692307693, 0.9433962264150944},
    {"completely different words here",
     "a little girl does gymnastics",
     0.0, 0.0, 0.0},
    {"girl",
     "a little girl does gymnastics",
     0.01831563888873418, 0.3333333333333333, 0.21739130434782608},
    {"a a a a a",
     "a little girl does gymnastics",
     0.0, 0.2, 0.2},
    {"a little girl does gymnastics today",
     "a little girl does gymnastics",
     0.7598356856515925, 0.9090909090909091, 0.9803921568627451},
    {"the cat sat on the mat",
     "the cat sat on the mat",
     1.0, 1.0, 1.0},
    {"the cat sat",
     "the cat sat on the mat",
     0.36787944117144233, 0.6666666666666666, 0.5263157894736842},
    {"cats sitting on mats",
     "the cat sat on the mat",
     0.0, 0.2, 0.5172413793103449},
    {"the the the cat cat sat",
     "the cat sat on the mat",
     0.0, 0.5, 0.6666666666666666},
    {"mat the on sat cat the",
     "the cat sat on the mat",
     0.0, 0.5, 1.0},
    {"a man is cooking eggs",
     "a man cooks eggs in a pan",
     0.0, 0.5, 0.5882352941176471},
};

TextSimilarity score(const char* candidate, const char* reference) {
  return text_similarity(Caption::make("c", candidate),
                         Caption::make("c", reference));
}

}  // namespace

TEST_SUITE("text_metrics") {

TEST_CASE("fixtures match the independently computed scores to 1e-9") {
  for (const TextMetricFixture& f : kTextMetricFixtures) {
    CAPTURE(f.candidate);
    const TextSimilarity s = score(f.candidate, f.reference);
    CHECK(s.bleu4 == doctest::Approx(f.bleu4).epsilon(1e-9));
    CHECK(s.rouge_l_f1 == doctest::Approx(f.rouge_l_f1).epsilon(1e-9));
    CHECK(s.meteor_lite == doctest::Approx(f.meteor_lite).epsilon(1e-9));
  }
}

TEST_CASE("identity is exactly one on every axis") {
  const TextSimilarity s =
      score("a man cooks eggs in a pan", "a man cooks eggs in a pan");
  CHECK(s.bleu4 == 1.0);
  CHECK(s.rouge_l_f1 == 1.0);
  CHECK(s.meteor_lite == 1.0);
}

TEST_CASE("hand-checked corner values") {
  // One token replaced out of five: the four n-gram precisions are 4/5,
  // 3/4, 2/3, 1/2 and the product's fourth root is 0.2^(1/4).
  CHECK(score("a little girl does [UNK]", "a little girl does gymnastics")
            .bleu4 == doctest::Approx(std::pow(0.2, 0.25)).epsilon(1e-12));
  // Single-token candidate: order is capped at 1 and the brevity penalty
  // is exp(1 - 5/1).
  CHECK(score("girl", "a little girl does gymnastics").bleu4 ==
        doctest::Approx(std::exp(-4.0)).epsilon(1e-12));
  // A pure reordering has no 2-gram overlap so BLEU collapses to zero, but
  // the unigram-based meteor score stays at one.
  const TextSimilarity shuffled =
      score("mat the on sat cat the", "the cat sat on the mat");
  CHECK(shuffled.bleu4 == 0.0);
  CHECK(shuffled.meteor_lite == 1.0);
}

TEST_CASE("empty candidates score zero, empty references throw") {
  const TextSimilarity s = score("", "a little girl does gymnastics");
  CHECK(s.bleu4 == 0.0);
  CHECK(s.rouge_l_f1 == 0.0);
  CHECK(s.meteor_lite == 0.0);
  CHECK_THROWS_AS(score("a girl", ""), InvalidInput);
}

TEST_CASE("light_stem strips only the documented suffixes") {
  CHECK(light_stem("Cooking") == "cook");
  CHECK(light_stem("cooked") == "cook");
  CHECK(light_stem("cats") == "cat");
  CHECK(light_stem("boxes") == "box");
  CHECK(light_stem("glass") == "glass");  // "ss" is not a plural
  CHECK(light_stem("sing") == "sing");    // too short to lose "ing"
  CHECK(light_stem("red") == "red");      // too short to lose "ed"
  CHECK(light_stem("as") == "as");        // too short to lose "s"
  CHECK(light_stem("GIRL") == "girl");
}

TEST_CASE("meteor matches exact tokens before falling back to stems") {
  // "cats" and "mats" only align with the reference via stemming.
  const TextSimilarity s = score("cats sitting on mats",
                                 "the cat sat on the mat");
  // matches: cats~cat (stem), on (exact), mats~mat (stem) -> P=3/4, R=3/6.
  const double p = 3.0 / 4.0;
  const double r = 3.0 / 6.0;
  CHECK(s.meteor_lite ==
        doctest::Approx(p * r / (0.9 * p + 0.1 * r)).epsilon(1e-12));
}

}  // TEST_SUITE("text_metrics")
