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

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "perturbkit/errors.hpp"
#include "perturbkit/rng.hpp"
#include "perturbkit/runner.hpp"
#include "test_util.hpp"

using namespace perturbkit;

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "missing file: " << path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Two tiny packed-raw source clips plus a manifest describing them.
struct Dataset {
  testutil::TempDir tmp{"runner"};
  DatasetManifest manifest;

  Dataset() {
    for (const std::string id : {"c1", "c2"}) {
      ClipFrames clip =
          testutil::natural_clip(id == "c1" ? 11 : 22, 6, 16, 12, id);
      clip.fps = {3, 1};
      const auto path = tmp.path() / (id + ".rgb24");
      write_clip(clip, FrameStore{StoreLayout::kPackedRaw, path});
      ManifestEntry e;
      e.clip_id = id;
      e.source_path = path.string();
      e.start_sec = 0.0;
      e.end_sec = 2.0;
      e.caption = "a little girl does gymnastics";
      e.video_id = "v_" + id;
      manifest.entries.push_back(e);
    }
    manifest.dataset_name = "runner_test";
  }
};

std::vector<PerturbationSpec> test_specs() {
  return {parse_spec_label("Noise/gaussian:1"),
          parse_spec_label("DropText/NoNN")};
}

RunnerOptions packed_options(int workers) {
  RunnerOptions opt;
  opt.global_seed = 7;
  opt.workers = workers;
  opt.lexicon_dir = testutil::lexicon_dir();
  opt.output_layout = StoreLayout::kPackedRaw;
  return opt;
}

}  // namespace

TEST_SUITE("runner") {

TEST_CASE("a fresh run completes every item in sorted order") {
  Dataset ds;
  const auto out = ds.tmp.path() / "out";
  const RunSummary sum =
      perturb_dataset(ds.manifest, test_specs(), packed_options(1), out);

  REQUIRE(sum.records.size() == 4);
  CHECK(sum.completed == 4);
  CHECK(sum.skipped == 0);
  CHECK(sum.failed == 0);

  // Sorted by spec dir_name then clip_id; text__ precedes video__.
  CHECK(sum.records[0].spec.name == "NoNN");
  CHECK(sum.records[0].clip_id == "c1");
  CHECK(sum.records[1].clip_id == "c2");
  CHECK(sum.records[2].spec.name == "gaussian");
  CHECK(sum.records[2].clip_id == "c1");
  CHECK(sum.records[3].clip_id == "c2");

  for (const RunRecord& r : sum.records) {
    CHECK_FALSE(r.failed);
    CHECK(std::filesystem::exists(r.output_path));
    CHECK(r.input_hash.size() == 16);
  }

  // Per-item seeds are a pure function of (global, clip, name, severity).
  CHECK(sum.records[0].item_seed == derive_seed(7, "c1", "NoNN", 0));
  CHECK(sum.records[2].item_seed == derive_seed(7, "c1", "gaussian", 1));
  CHECK(sum.records[3].item_seed == derive_seed(7, "c2", "gaussian", 1));
  CHECK(sum.records[0].lexicon_version.substr(0, 4) == "lex-");
  CHECK(sum.records[2].lexicon_version.empty());
}

TEST_CASE("done markers carry identity fields and no timestamps") {
  Dataset ds;
  const auto out = ds.tmp.path() / "out";
  const RunSummary sum =
      perturb_dataset(ds.manifest, test_specs(), packed_options(1), out);
  REQUIRE(sum.completed == 4);

  const auto text_marker =
      out / "text__DropText__NoNN" / "c1" / "done.json";
  const nlohmann::json tm = nlohmann::json::parse(slurp(text_marker));
  CHECK(tm.at("clip_id") == "c1");
  CHECK(tm.at("spec") == "DropText/NoNN");
  CHECK(tm.at("seed") == std::to_string(derive_seed(7, "c1", "NoNN", 0)));
  CHECK(tm.at("input_hash").get<std::string>().size() == 16);
  CHECK(tm.at("lexicon_version").get<std::string>().substr(0, 4) == "lex-");
  CHECK(tm.size() == 5);  // nothing time-dependent may sneak in

  const auto video_marker =
      out / "video__Noise__gaussian__s1" / "c2" / "done.json";
  const nlohmann::json vm = nlohmann::json::parse(slurp(video_marker));
  CHECK(vm.at("spec") == "Noise/gaussian:1");
  CHECK(vm.at("seed") == std::to_string(derive_seed(7, "c2", "gaussian", 1)));
  CHECK_FALSE(vm.contains("lexicon_version"));
  CHECK(vm.size() == 4);

  write_run_log(sum, 7, out);
  const nlohmann::json log = nlohmann::json::parse(slurp(out / "run_log.json"));
  CHECK(log.at("finished_at").get<std::string>().size() == 20);
  CHECK(log.at("completed") == 4);
  CHECK(log.at("records").size() == 4);
  CHECK(log.at("records")[0].at("status") == "completed");
}

TEST_CASE("a second run skips everything; deleting one item recomputes it") {
  Dataset ds;
  const auto out = ds.tmp.path() / "out";
  const std::vector<PerturbationSpec> specs = test_specs();

  const RunSummary first =
      perturb_dataset(ds.manifest, specs, packed_options(1), out);
  REQUIRE(first.completed == 4);

  const auto video_c2 = out / "video__Noise__gaussian__s1" / "c2";
  const auto text_c1 = out / "text__DropText__NoNN" / "c1";
  const std::string video_bytes = slurp(video_c2 / "clip.rgb24");
  const std::string text_bytes = slurp(text_c1 / "caption.json");

  const RunSummary second =
      perturb_dataset(ds.manifest, specs, packed_options(1), out);
  CHECK(second.completed == 0);
  CHECK(second.skipped == 4);
  for (const RunRecord& r : second.records) CHECK(r.skipped);

  std::filesystem::remove_all(video_c2);
  const RunSummary third =
      perturb_dataset(ds.manifest, specs, packed_options(1), out);
  CHECK(third.completed == 1);
  CHECK(third.skipped == 3);
  CHECK(slurp(video_c2 / "clip.rgb24") == video_bytes);
  CHECK(slurp(text_c1 / "caption.json") == text_bytes);
}

TEST_CASE("a stale marker forces recomputation") {
  Dataset ds;
  const auto out = ds.tmp.path() / "out";
  const std::vector<PerturbationSpec> specs = {
      parse_spec_label("Noise/gaussian:1")};
  perturb_dataset(ds.manifest, specs, packed_options(1), out);

  // Pretend the item was produced under a different seed.
  const auto marker =
      out / "video__Noise__gaussian__s1" / "c1" / "done.json";
  nlohmann::json m = nlohmann::json::parse(slurp(marker));
  m["seed"] = "12345";
  std::ofstream(marker, std::ios::trunc) << m.dump();

  const RunSummary rerun =
      perturb_dataset(ds.manifest, specs, packed_options(1), out);
  CHECK(rerun.completed == 1);
  CHECK(rerun.skipped == 1);
}

TEST_CASE("worker count changes nothing about the artifacts") {
  Dataset ds;
  const auto out1 = ds.tmp.path() / "w1";
  const auto out4 = ds.tmp.path() / "w4";
  const std::vector<PerturbationSpec> specs = test_specs();

  const RunSummary s1 =
      perturb_dataset(ds.manifest, specs, packed_options(1), out1);
  const RunSummary s4 =
      perturb_dataset(ds.manifest, specs, packed_options(4), out4);
  REQUIRE(s1.completed == 4);
  REQUIRE(s4.completed == 4);

  for (size_t i = 0; i < s1.records.size(); ++i) {
    CHECK(s1.records[i].clip_id == s4.records[i].clip_id);
    CHECK(s1.records[i].item_seed == s4.records[i].item_seed);
    CHECK(s1.records[i].input_hash == s4.records[i].input_hash);
  }
  CHECK(slurp(out1 / "video__Noise__gaussian__s1" / "c1" / "clip.rgb24") ==
        slurp(out4 / "video__Noise__gaussian__s1" / "c1" / "clip.rgb24"));
  CHECK(slurp(out1 / "text__DropText__NoNN" / "c2" / "caption.json") ==
        slurp(out4 / "text__DropText__NoNN" / "c2" / "caption.json"));
}

TEST_CASE("item failures are recorded without aborting the run") {
  Dataset ds;
  ds.manifest.entries[1].source_path =
      (ds.tmp.path() / "missing.rgb24").string();
  const auto out = ds.tmp.path() / "out";
  const RunSummary sum = perturb_dataset(
      ds.manifest, {parse_spec_label("Noise/gaussian:2")}, packed_options(1),
      out);
  REQUIRE(sum.records.size() == 2);
  CHECK(sum.completed == 1);
  CHECK(sum.failed == 1);
  CHECK_FALSE(sum.records[0].failed);
  CHECK(sum.records[1].failed);
  CHECK_FALSE(sum.records[1].error.empty());
}

TEST_CASE("invalid inputs are rejected before any work starts") {
  Dataset ds;
  const auto out = ds.tmp.path() / "out";

  DatasetManifest dup = ds.manifest;
  dup.entries.push_back(dup.entries[0]);
  CHECK_THROWS_AS(
      perturb_dataset(dup, test_specs(), packed_options(1), out),
      InvalidInput);

  PerturbationSpec bad = parse_spec_label("Noise/gaussian:1");
  bad.severity = Severity{9};
  CHECK_THROWS_AS(perturb_dataset(ds.manifest, {bad}, packed_options(1), out),
                  InvalidInput);
}

}  // TEST_SUITE("runner")
