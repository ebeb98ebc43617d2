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
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "perturbkit/embeddings.hpp"
#include "perturbkit/frame_store.hpp"
#include "perturbkit/manifest.hpp"
#include "perturbkit/subprocess.hpp"
#include "test_util.hpp"

using namespace perturbkit;

namespace {

SubprocessResult cli(const std::string& args) {
  const std::string bin = testutil::cli_path();
  REQUIRE_MESSAGE(!bin.empty(), "PERTURBKIT_CLI is not set");
  return run_subprocess(bin + " " + args, "");
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "missing file: " << path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Source clips, manifest, and one-hot embeddings for a two-pair dataset.
struct CliFixture {
  testutil::TempDir tmp{"cli"};
  std::filesystem::path manifest_path;

  CliFixture() {
    DatasetManifest manifest;
    manifest.dataset_name = "cli_smoke";
    int i = 0;
    for (const std::string id : {"c1", "c2"}) {
      ClipFrames clip = testutil::natural_clip(40 + i, 6, 16, 12, id);
      clip.fps = {3, 1};
      const auto store = tmp.path() / (id + ".rgb24");
      write_clip(clip, FrameStore{StoreLayout::kPackedRaw, store});
      ManifestEntry e;
      e.clip_id = id;
      e.source_path = store.string();
      e.start_sec = 0.0;
      e.end_sec = 2.0;
      e.caption = "a little girl does gymnastics";
      e.video_id = "vid" + std::to_string(++i);
      manifest.entries.push_back(e);
    }
    manifest_path = tmp.path() / "manifest.jsonl";
    save_manifest(manifest, manifest_path);
  }

  std::filesystem::path emb(const std::string& file,
                            const std::vector<std::string>& ids,
                            const std::vector<int>& axes) const {
    EmbeddingSet set;
    set.dim = 3;
    set.ids = ids;
    set.data.assign(ids.size() * set.dim, 0.0f);
    for (size_t r = 0; r < axes.size(); ++r) {
      set.data[r * set.dim + axes[r]] = 1.0f;
    }
    const auto path = tmp.path() / file;
    write_emb1(set, path);
    return path;
  }
};

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("perturb-video writes stores, markers, and a run log") {
  CliFixture fx;
  const auto out = fx.tmp.path() / "outv";
  const SubprocessResult r =
      cli("perturb-video --manifest " + fx.manifest_path.string() +
          " --spec Noise/gaussian:2 --seed 5 --out " + out.string() +
          " --layout raw");
  CHECK_MESSAGE(r.exit_code == 0, r.err);
  CHECK(std::filesystem::exists(out / "video__Noise__gaussian__s2" / "c1" /
                                "clip.rgb24"));
  CHECK(std::filesystem::exists(out / "video__Noise__gaussian__s2" / "c2" /
                                "done.json"));
  CHECK(std::filesystem::exists(out / "run_log.json"));

  // Same invocation, fresh root: artifacts must be byte-identical.
  const auto out2 = fx.tmp.path() / "outv2";
  const SubprocessResult r2 =
      cli("perturb-video --manifest " + fx.manifest_path.string() +
          " --spec Noise/gaussian:2 --seed 5 --out " + out2.string() +
          " --layout raw");
  CHECK(r2.exit_code == 0);
  CHECK(slurp(out / "video__Noise__gaussian__s2" / "c1" / "clip.rgb24") ==
        slurp(out2 / "video__Noise__gaussian__s2" / "c1" / "clip.rgb24"));

  // A different seed moves the noise.
  const auto out3 = fx.tmp.path() / "outv3";
  const SubprocessResult r3 =
      cli("perturb-video --manifest " + fx.manifest_path.string() +
          " --spec Noise/gaussian:2 --seed 6 --out " + out3.string() +
          " --layout raw");
  CHECK(r3.exit_code == 0);
  CHECK(slurp(out / "video__Noise__gaussian__s2" / "c1" / "clip.rgb24") !=
        slurp(out3 / "video__Noise__gaussian__s2" / "c1" / "clip.rgb24"));
}

TEST_CASE("a severity-free video spec expands to all five levels") {
  CliFixture fx;
  const auto out = fx.tmp.path() / "expand";
  const SubprocessResult r =
      cli("perturb-video --manifest " + fx.manifest_path.string() +
          " --spec Temporal/sampling --seed 1 --out " + out.string() +
          " --layout raw");
  CHECK_MESSAGE(r.exit_code == 0, r.err);
  for (int s = 1; s <= 5; ++s) {
    CHECK(std::filesystem::exists(
        out / ("video__Temporal__sampling__s" + std::to_string(s)) / "c1" /
        "clip.rgb24"));
  }
}

TEST_CASE("perturb-video runs MPEG compression through --encoder-cmd") {
  const std::string rawcodec = testutil::rawcodec_path();
  REQUIRE_MESSAGE(!rawcodec.empty(), "PERTURBKIT_RAWCODEC is not set");
  CliFixture fx;
  const auto out = fx.tmp.path() / "mpeg";
  const SubprocessResult r =
      cli("perturb-video --manifest " + fx.manifest_path.string() +
          " --spec Digital/mpeg1:1 --encoder-cmd " + rawcodec +
          " --out " + out.string() + " --layout raw");
  CHECK_MESSAGE(r.exit_code == 0, r.err);
  CHECK(std::filesystem::exists(out / "video__Digital__mpeg1__s1" / "c2" /
                                "clip.rgb24"));
}

TEST_CASE("perturb-text writes captions and honors --plugin-cmd") {
  CliFixture fx;
  const auto out = fx.tmp.path() / "outt";
  const SubprocessResult r =
      cli("perturb-text --manifest " + fx.manifest_path.string() +
          " --spec Positional/DropLast --seed 5 --out " + out.string());
  CHECK_MESSAGE(r.exit_code == 0, r.err);
  const nlohmann::json caption = nlohmann::json::parse(
      slurp(out / "text__Positional__DropLast" / "c1" / "caption.json"));
  CHECK(caption.at("text") == "a little girl does [UNK]");
  CHECK(caption.at("clip_id") == "c1");

  // Plugin perturbations fail without a command and run with one.
  const auto outp = fx.tmp.path() / "outp";
  const SubprocessResult missing =
      cli("perturb-text --manifest " + fx.manifest_path.string() +
          " --spec SwapText/BackTrans --out " + outp.string());
  CHECK(missing.exit_code == 1);

  const SubprocessResult plugged =
      cli("perturb-text --manifest " + fx.manifest_path.string() +
          " --spec SwapText/BackTrans --plugin-cmd cat --out " +
          outp.string());
  CHECK_MESSAGE(plugged.exit_code == 0, plugged.err);
  const nlohmann::json echoed = nlohmann::json::parse(
      slurp(outp / "text__SwapText__BackTrans" / "c2" / "caption.json"));
  CHECK(echoed.at("text") == "a little girl does gymnastics");
}

TEST_CASE("eval, aggregate, and report chain through JSONL on disk") {
  CliFixture fx;
  const auto ct = fx.emb("ct.emb1", {"c1", "c2"}, {0, 1});
  const auto cv = fx.emb("cv.emb1", {"vid1", "vid2"}, {0, 1});
  // c2 drifts off-axis, so its pair drops to rank 2 (tie broken by id).
  const auto pt = fx.emb("pt.emb1", {"c1", "c2"}, {0, 2});
  const auto reports = fx.tmp.path() / "reports.jsonl";

  const SubprocessResult e1 =
      cli("eval --manifest " + fx.manifest_path.string() + " --clean-text " +
          ct.string() + " --clean-video " + cv.string() + " --text " +
          pt.string() + " --spec DropText/NoNN --k 1 --k 2 --measure cosine" +
          " --format jsonl --out " + reports.string());
  CHECK_MESSAGE(e1.exit_code == 0, e1.err);

  const SubprocessResult e2 =
      cli("eval --manifest " + fx.manifest_path.string() + " --clean-text " +
          ct.string() + " --clean-video " + cv.string() +
          " --spec Noise/gaussian:1 --k 1 --k 2 --measure cosine" +
          " --format jsonl --append --out " + reports.string());
  CHECK_MESSAGE(e2.exit_code == 0, e2.err);

  std::istringstream lines(slurp(reports));
  std::string line;
  std::vector<nlohmann::json> parsed;
  while (std::getline(lines, line)) parsed.push_back(nlohmann::json::parse(line));
  REQUIRE(parsed.size() == 2);
  CHECK(parsed[0].at("spec") == "DropText/NoNN");
  CHECK(parsed[0].at("scores")[0].at("r_clean") == 100.0);
  CHECK(parsed[0].at("scores")[0].at("r_perturbed") == 50.0);
  CHECK(parsed[1].at("scores")[0].at("r_perturbed") == 100.0);

  const auto agg = fx.tmp.path() / "agg.csv";
  const SubprocessResult a =
      cli("aggregate --reports " + reports.string() +
          " --k 1 --gamma rel --format csv --out " + agg.string());
  CHECK_MESSAGE(a.exit_code == 0, a.err);
  CHECK(slurp(agg) ==
        "modality,category,mean,std,sample_count\n"
        "video,Noise,1,0,1\n"
        "text,DropText,0.5,0,1\n");

  const auto table = fx.tmp.path() / "report.csv";
  const SubprocessResult t = cli("report --reports " + reports.string() +
                                 " --format csv --out " + table.string());
  CHECK_MESSAGE(t.exit_code == 0, t.err);
  CHECK(slurp(table) ==
        "modality,category,perturbation,severity,k,r_clean,r_perturbed,"
        "gamma_abs,gamma_rel\n"
        "text,DropText,NoNN,,1,100,50,0.5,0.5\n"
        "text,DropText,NoNN,,2,100,100,1,1\n"
        "video,Noise,gaussian,1,1,100,100,1,1\n"
        "video,Noise,gaussian,1,2,100,100,1,1\n");
}

TEST_CASE("grid defaults video severity to 3 and leaves holes") {
  CliFixture fx;
  const auto ct = fx.emb("ct.emb1", {"c1", "c2"}, {0, 1});
  const auto cv = fx.emb("cv.emb1", {"vid1", "vid2"}, {0, 1});
  const auto pt = fx.emb("pt.emb1", {"c1", "c2"}, {0, 2});
  const auto grid = fx.tmp.path() / "grid.csv";

  const SubprocessResult g = cli(
      "grid --manifest " + fx.manifest_path.string() + " --clean-text " +
      ct.string() + " --clean-video " + cv.string() +
      " --text-spec DropText/NoNN --video-spec Noise/gaussian" +
      " --text-emb DropText/NoNN=" + pt.string() +
      " --k 1 --measure cosine --format csv --out " + grid.string());
  CHECK_MESSAGE(g.exit_code == 0, g.err);
  CHECK(slurp(grid) ==
        "text\\video,clean,Noise/gaussian:3\n"
        "clean,1,\n"
        "DropText/NoNN,0.5,\n");
}

TEST_CASE("failures surface as nonzero exits with a diagnostic") {
  CliFixture fx;
  const SubprocessResult unknown = cli("no-such-subcommand");
  CHECK(unknown.exit_code != 0);

  const SubprocessResult bad_spec =
      cli("perturb-video --manifest " + fx.manifest_path.string() +
          " --spec Noise/nope:1 --out " + (fx.tmp.path() / "x").string());
  CHECK(bad_spec.exit_code == 1);
  CHECK(bad_spec.err.find("error:") != std::string::npos);

  const SubprocessResult bad_layout =
      cli("perturb-video --manifest " + fx.manifest_path.string() +
          " --spec Noise/gaussian:1 --layout tiff --out " +
          (fx.tmp.path() / "y").string());
  CHECK(bad_layout.exit_code == 1);

  // Item-level failures are reported and flip the exit code.
  DatasetManifest broken = load_manifest(fx.manifest_path);
  broken.entries[0].source_path = (fx.tmp.path() / "gone.rgb24").string();
  const auto broken_path = fx.tmp.path() / "broken.jsonl";
  save_manifest(broken, broken_path);
  const SubprocessResult partial =
      cli("perturb-video --manifest " + broken_path.string() +
          " --spec Noise/gaussian:1 --out " +
          (fx.tmp.path() / "z").string() + " --layout raw");
  CHECK(partial.exit_code == 1);
  CHECK(partial.err.find("FAILED") != std::string::npos);
}

}  // TEST_SUITE("cli")
