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

#include <string>
#include <vector>

#include "doctest.h"
#include "perturbkit/engine.hpp"
#include "perturbkit/errors.hpp"
#include "perturbkit/lexicon.hpp"
#include "perturbkit/registry.hpp"
#include "test_util.hpp"

using namespace perturbkit;

namespace {

PerturbationSpec video_spec(const std::string& label, uint64_t seed) {
  PerturbationSpec spec = parse_spec_label(label);
  spec.seed = seed;
  return spec;
}

}  // namespace

TEST_SUITE("engine") {

TEST_CASE("every non-codec video perturbation dispatches at every severity") {
  const ClipFrames clip = testutil::natural_clip(42, 8, 64, 64);
  for (const RegistryEntry& entry : video_registry()) {
    if (entry.category == "Digital" && entry.name != "jpeg") continue;
    for (int level = 1; level <= 5; ++level) {
      CAPTURE(entry.name);
      CAPTURE(level);
      PerturbationSpec spec;
      spec.modality = Modality::kVideo;
      spec.category = entry.category;
      spec.name = entry.name;
      spec.severity = Severity{level};
      spec.seed = 7;
      const ClipFrames out = apply_video_perturbation(clip, spec);
      CHECK(out.frame_count() == clip.frame_count());
      CHECK(out.width() == clip.width());
      CHECK(out.height() == clip.height());
      CHECK(out.clip_id == clip.clip_id);
      CHECK(out.fps == clip.fps);
    }
  }
}

TEST_CASE("the spec seed fully determines stochastic outputs") {
  const ClipFrames clip = testutil::natural_clip(1, 4, 32, 32);
  const ClipFrames a =
      apply_video_perturbation(clip, video_spec("Noise/gaussian:3", 9));
  const ClipFrames b =
      apply_video_perturbation(clip, video_spec("Noise/gaussian:3", 9));
  const ClipFrames c =
      apply_video_perturbation(clip, video_spec("Noise/gaussian:3", 10));
  CHECK(a.frames == b.frames);
  CHECK(a.frames != c.frames);
}

TEST_CASE("the shot noise model is switchable through engine options") {
  const ClipFrames clip = testutil::natural_clip(2, 3, 32, 32);
  const PerturbationSpec spec = video_spec("Noise/shot:3", 11);
  EngineOptions poisson;
  poisson.shot_poisson = true;
  const ClipFrames salt = apply_video_perturbation(clip, spec);
  const ClipFrames photon = apply_video_perturbation(clip, spec, poisson);
  CHECK(salt.frames != photon.frames);
  // Either way the result stays deterministic.
  CHECK(apply_video_perturbation(clip, spec, poisson).frames == photon.frames);
}

TEST_CASE("modality mixups are rejected on both paths") {
  const ClipFrames clip = testutil::natural_clip(3, 2, 16, 16);
  const LexiconBundle lexicon = load_lexicon(testutil::lexicon_dir());
  const Caption caption = Caption::make("c1", "a dog");

  CHECK_THROWS_AS(
      apply_video_perturbation(clip, parse_spec_label("DropText/NoNN")),
      InvalidInput);
  CHECK_THROWS_AS(apply_text_perturbation_spec(
                      caption, parse_spec_label("Noise/gaussian:1"), lexicon),
                  InvalidInput);

  PerturbationSpec wrong_category;
  wrong_category.modality = Modality::kVideo;
  wrong_category.category = "Noise";
  wrong_category.name = "jpeg";
  wrong_category.severity = Severity{1};
  CHECK_THROWS_AS(apply_video_perturbation(clip, wrong_category),
                  UnknownPerturbation);

  PerturbationSpec no_severity;
  no_severity.modality = Modality::kVideo;
  no_severity.category = "Noise";
  no_severity.name = "gaussian";
  CHECK_THROWS_AS(apply_video_perturbation(clip, no_severity), InvalidInput);
}

TEST_CASE("text dispatch honors seed and lexicon") {
  const LexiconBundle lexicon = load_lexicon(testutil::lexicon_dir());
  const Caption caption = Caption::make("c1", "a little girl does gymnastics");
  PerturbationSpec spec = parse_spec_label("ChangeChar/Typos");
  spec.seed = 4;
  const Caption a = apply_text_perturbation_spec(caption, spec, lexicon);
  const Caption b = apply_text_perturbation_spec(caption, spec, lexicon);
  CHECK(a.text == b.text);
  CHECK(a.clip_id == "c1");
}

}  // TEST_SUITE("engine")
