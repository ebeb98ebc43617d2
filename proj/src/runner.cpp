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

#include "perturbkit/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <thread>

#include "json.hpp"
#include "perturbkit/errors.hpp"
#include "perturbkit/lexicon.hpp"
#include "perturbkit/rng.hpp"

namespace perturbkit {
namespace {

using nlohmann::json;

std::string hex64(uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

// Hash of geometry plus per-frame content hashes; stable across layouts.
std::string clip_hash(const ClipFrames& clip) {
  std::string acc = std::to_string(clip.width()) + "x" +
                    std::to_string(clip.height()) + "x" +
                    std::to_string(clip.frame_count());
  for (const Frame& f : clip.frames) {
    acc += "|" + hex64(fnv1a64(f.pixels.data(), f.pixels.size()));
  }
  return hex64(fnv1a64(acc));
}

void write_json_atomic(const std::filesystem::path& path, const json& j) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw IoError("cannot write: " + tmp.string());
    out << j.dump(2) << "\n";
  }
  std::filesystem::rename(tmp, path);
}

struct WorkItem {
  size_t spec_index = 0;
  size_t entry_index = 0;
};

bool marker_matches(const std::filesystem::path& marker, const json& expected) {
  std::ifstream in(marker);
  if (!in) return false;
  json found;
  try {
    in >> found;
  } catch (const json::exception&) {
    return false;
  }
  for (const auto& [key, value] : expected.items()) {
    if (!found.contains(key) || found.at(key) != value) return false;
  }
  return true;
}

std::string iso_now() {
  const std::time_t now = std::time(nullptr);
  char buf[32];
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

}  // namespace

RunSummary perturb_dataset(const DatasetManifest& manifest,
                           const std::vector<PerturbationSpec>& specs,
                           const RunnerOptions& options,
                           const std::filesystem::path& out_root) {
  manifest.validate();
  for (const PerturbationSpec& spec : specs) spec.validate();
  std::filesystem::create_directories(out_root);

  const bool any_text =
      std::any_of(specs.begin(), specs.end(), [](const PerturbationSpec& s) {
        return s.modality == Modality::kText;
      });
  LexiconBundle lexicon;
  if (any_text) {
    lexicon = load_lexicon(options.lexicon_dir.empty() ? default_lexicon_dir()
                                                       : options.lexicon_dir);
  }

  std::vector<WorkItem> items;
  items.reserve(specs.size() * manifest.entries.size());
  for (size_t s = 0; s < specs.size(); ++s) {
    for (size_t e = 0; e < manifest.entries.size(); ++e) {
      items.push_back({s, e});
    }
  }
  std::sort(items.begin(), items.end(),
            [&](const WorkItem& a, const WorkItem& b) {
              const std::string da = specs[a.spec_index].dir_name();
              const std::string db = specs[b.spec_index].dir_name();
              if (da != db) return da < db;
              return manifest.entries[a.entry_index].clip_id <
                     manifest.entries[b.entry_index].clip_id;
            });

  RunSummary summary;
  summary.records.resize(items.size());

  auto run_item = [&](size_t index) {
    const WorkItem& item = items[index];
    const PerturbationSpec& base_spec = specs[item.spec_index];
    const ManifestEntry& entry = manifest.entries[item.entry_index];
    RunRecord& record = summary.records[index];
    record.spec = base_spec;
    record.clip_id = entry.clip_id;
    record.item_seed = derive_seed(
        options.global_seed, entry.clip_id, base_spec.name,
        base_spec.severity ? base_spec.severity->level : 0);
    record.spec.seed = record.item_seed;

    const std::filesystem::path item_dir =
        out_root / base_spec.dir_name() / entry.clip_id;
    const std::filesystem::path marker = item_dir / "done.json";
    try {
      if (base_spec.modality == Modality::kText) {
        record.lexicon_version = lexicon.version;
        record.input_hash = hex64(fnv1a64(entry.caption));
        record.output_path = (item_dir / "caption.json").string();
        const json expected{{"clip_id", entry.clip_id},
                            {"spec", base_spec.label()},
                            {"seed", std::to_string(record.item_seed)},
                            {"input_hash", record.input_hash},
                            {"lexicon_version", lexicon.version}};
        if (marker_matches(marker, expected)) {
          record.skipped = true;
          return;
        }
        std::filesystem::remove_all(item_dir);
        std::filesystem::create_directories(item_dir);
        const Caption caption = Caption::make(entry.clip_id, entry.caption);
        const Caption perturbed = apply_text_perturbation_spec(
            caption, record.spec, lexicon, options.engine);
        write_json_atomic(item_dir / "caption.json",
                          json{{"clip_id", entry.clip_id},
                               {"perturbation", base_spec.label()},
                               {"text", perturbed.text}});
        write_json_atomic(marker, expected);
      } else {
        const FrameStore in_store = open_store(entry.source_path);
        const ClipFrames clip =
            read_clip(in_store, entry.clip_id, entry.start_sec, entry.end_sec);
        record.input_hash = clip_hash(clip);
        const json expected{{"clip_id", entry.clip_id},
                            {"spec", base_spec.label()},
                            {"seed", std::to_string(record.item_seed)},
                            {"input_hash", record.input_hash}};
        const bool packed = options.output_layout == StoreLayout::kPackedRaw;
        const std::filesystem::path store_path =
            packed ? item_dir / "clip.rgb24" : item_dir;
        record.output_path = store_path.string();
        if (marker_matches(marker, expected)) {
          record.skipped = true;
          return;
        }
        std::filesystem::remove_all(item_dir);
        std::filesystem::create_directories(item_dir);
        const ClipFrames perturbed =
            apply_video_perturbation(clip, record.spec, options.engine);
        write_clip(perturbed, FrameStore{options.output_layout, store_path},
                   {{"perturbation", base_spec.label()},
                    {"seed", std::to_string(record.item_seed)}});
        write_json_atomic(marker, expected);
      }
    } catch (const std::exception& e) {
      record.failed = true;
      record.error = e.what();
    }
  };

  const int workers =
      std::max(1, std::min<int>(options.workers,
                                static_cast<int>(items.size() ? items.size() : 1)));
  if (workers == 1) {
    for (size_t i = 0; i < items.size(); ++i) run_item(i);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (size_t i = next.fetch_add(1); i < items.size();
             i = next.fetch_add(1)) {
          run_item(i);
        }
      });
    }
    for (std::thread& t : pool) t.join();
  }

  for (const RunRecord& r : summary.records) {
    if (r.failed) {
      ++summary.failed;
    } else if (r.skipped) {
      ++summary.skipped;
    } else {
      ++summary.completed;
    }
  }
  return summary;
}

void write_run_log(const RunSummary& summary, uint64_t global_seed,
                   const std::filesystem::path& out_root) {
  json records = json::array();
  for (const RunRecord& r : summary.records) {
    json j{{"spec", r.spec.label()},
           {"clip_id", r.clip_id},
           {"seed", std::to_string(r.item_seed)},
           {"input_hash", r.input_hash},
           {"output", r.output_path},
           {"status",
            r.failed ? "failed" : (r.skipped ? "skipped" : "completed")}};
    if (!r.lexicon_version.empty()) j["lexicon_version"] = r.lexicon_version;
    if (r.failed) j["error"] = r.error;
    records.push_back(std::move(j));
  }
  const json log{{"global_seed", std::to_string(global_seed)},
                 {"completed", summary.completed},
                 {"skipped", summary.skipped},
                 {"failed", summary.failed},
                 {"finished_at", iso_now()},
                 {"records", std::move(records)}};
  write_json_atomic(out_root / "run_log.json", log);
}

}  // namespace perturbkit
