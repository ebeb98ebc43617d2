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

#ifndef PERTURBKIT_RUNNER_HPP_
#define PERTURBKIT_RUNNER_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "perturbkit/engine.hpp"
#include "perturbkit/frame_store.hpp"
#include "perturbkit/manifest.hpp"
#include "perturbkit/registry.hpp"

namespace perturbkit {

struct RunnerOptions {
  uint64_t global_seed = 0;
  int workers = 1;
  EngineOptions engine;
  // Empty picks default_lexicon_dir(). Loaded once, shared read-only.
  std::filesystem::path lexicon_dir;
  StoreLayout output_layout = StoreLayout::kFrameDirPng;
};

// One (entry x spec) work item after the run. Timestamps live only in the
// run log, never here, so records and artifacts are rerun-identical.
struct RunRecord {
  PerturbationSpec spec;
  std::string clip_id;
  std::string input_hash;       // fnv1a64 hex of the input bytes
  std::string output_path;      // store dir or caption file
  std::string lexicon_version;  // text items only
  uint64_t item_seed = 0;
  bool skipped = false;  // valid output from an earlier run
  bool failed = false;
  std::string error;
};

struct RunSummary {
  std::vector<RunRecord> records;  // sorted by (spec dir_name, clip_id)
  size_t completed = 0;
  size_t skipped = 0;
  size_t failed = 0;
};

// Applies every spec to every manifest entry under out_root/<spec>/<clip_id>.
// Items run on a worker pool but are fully independent; per-item seeds come
// from derive_seed(global_seed, clip_id, name, severity), so results do not
// depend on worker count or scheduling. A done.json marker written after the
// artifacts makes interrupted runs resumable: items whose marker matches the
// expected seed and input hash are skipped. Item failures are recorded, not
// fatal.
RunSummary perturb_dataset(const DatasetManifest& manifest,
                           const std::vector<PerturbationSpec>& specs,
                           const RunnerOptions& options,
                           const std::filesystem::path& out_root);

// Writes the human-facing run log (the only artifact with timestamps).
void write_run_log(const RunSummary& summary, uint64_t global_seed,
                   const std::filesystem::path& out_root);

}  // namespace perturbkit

#endif  // PERTURBKIT_RUNNER_HPP_
