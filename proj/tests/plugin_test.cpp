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
#include "perturbkit/plugin.hpp"
#include "test_util.hpp"

using namespace perturbkit;

namespace {

std::vector<Caption> two_captions() {
  return {Caption::make("c2", "a dog runs fast"),
          Caption::make("c1", "a little girl does gymnastics")};
}

}  // namespace

TEST_SUITE("plugin") {

TEST_CASE("an identity plugin echoes every caption back in input order") {
  const std::vector<Caption> in = two_captions();
  const std::vector<Caption> out = run_plugin(in, "cat");
  REQUIRE(out.size() == 2);
  CHECK(out[0].clip_id == "c2");
  CHECK(out[0].text == in[0].text);
  CHECK(out[1].clip_id == "c1");
  CHECK(out[1].text == in[1].text);
  CHECK(out[1].tokens == in[1].tokens);
}

TEST_CASE("output lines are re-aligned by id, not by arrival order") {
  const std::vector<Caption> out = run_plugin(two_captions(), "tac");
  REQUIRE(out.size() == 2);
  CHECK(out[0].clip_id == "c2");
  CHECK(out[0].text == "a dog runs fast");
  CHECK(out[1].clip_id == "c1");
  CHECK(out[1].text == "a little girl does gymnastics");
}

TEST_CASE("a rewriting plugin changes the text, and only the text") {
  const std::vector<Caption> out =
      run_plugin(two_captions(), "sed s/dog/wolf/");
  REQUIRE(out.size() == 2);
  CHECK(out[0].text == "a wolf runs fast");
  CHECK(out[0].tokens[1] == "wolf");
  CHECK(out[1].text == "a little girl does gymnastics");
}

TEST_CASE("protocol violations raise PluginError with the offending line") {
  const std::vector<Caption> in = two_captions();

  SUBCASE("non-JSON output") {
    CHECK_THROWS_WITH_AS(run_plugin(in, "echo garbage"),
                         doctest::Contains("line 1"), PluginError);
  }
  SUBCASE("missing keys") {
    CHECK_THROWS_WITH_AS(
        run_plugin(in, "echo '{\"id\": \"c2\"}'"),
        doctest::Contains("missing \"id\" or \"text\""), PluginError);
  }
  SUBCASE("missing id") {
    CHECK_THROWS_WITH_AS(run_plugin(in, "head -n 1"),
                         doctest::Contains("no line for id \"c1\""),
                         PluginError);
  }
  SUBCASE("nonzero exit") {
    CHECK_THROWS_WITH_AS(run_plugin(in, "exit 7"),
                         doctest::Contains("status 7"), PluginError);
  }
  SUBCASE("empty command") {
    CHECK_THROWS_AS(run_plugin(in, ""), PluginError);
  }
}

TEST_CASE("plugin-kind perturbations route through the external command") {
  const LexiconBundle lexicon = load_lexicon(testutil::lexicon_dir());
  const Caption caption = Caption::make("c1", "a little girl does gymnastics");

  for (const std::string name : {"BackTrans", "MLM", "Casual", "Formal"}) {
    PerturbationSpec spec;
    spec.modality = Modality::kText;
    spec.category = name == "BackTrans" || name == "MLM" ? "SwapText"
                                                         : "TextStyle";
    spec.name = name;

    // Without a command the spec is rejected, never silently passed through.
    CHECK_THROWS_AS(apply_text_perturbation_spec(caption, spec, lexicon, {}),
                    PluginError);

    EngineOptions options;
    options.plugin_cmd = "sed s/girl/robot/";
    const Caption out =
        apply_text_perturbation_spec(caption, spec, lexicon, options);
    CHECK(out.clip_id == "c1");
    CHECK(out.text == "a little robot does gymnastics");
  }
}

TEST_CASE("builtins never consult the plugin command") {
  const LexiconBundle lexicon = load_lexicon(testutil::lexicon_dir());
  const Caption caption = Caption::make("c1", "a little girl does gymnastics");
  EngineOptions options;
  options.plugin_cmd = "false";  // would fail if anything ran it

  PerturbationSpec spec;
  spec.modality = Modality::kText;
  spec.category = "Positional";
  spec.name = "DropLast";
  const Caption out =
      apply_text_perturbation_spec(caption, spec, lexicon, options);
  CHECK(out.text == "a little girl does [UNK]");
}

}  // TEST_SUITE("plugin")
