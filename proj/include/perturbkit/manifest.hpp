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

#ifndef PERTURBKIT_MANIFEST_HPP_
#define PERTURBKIT_MANIFEST_HPP_

#include <filesystem>
#include <string>
#include <vector>

namespace perturbkit {

// One clip-text pair. source_path points at a FrameStore root (frame dir or
// packed-raw file); [start_sec, end_sec) selects the window inside it.
struct ManifestEntry {
  std::string clip_id;
  std::string source_path;
  double start_sec = 0.0;
  double end_sec = 0.0;
  std::string caption;
  std::string video_id;

  bool operator==(const ManifestEntry&) const = default;
};

struct DatasetManifest {
  std::string dataset_name;
  std::vector<ManifestEntry> entries;

  // Throws InvalidInput on duplicate clip_ids, end_sec <= start_sec, or an
  // empty caption, naming the offending entry.
  void validate() const;
};

// JSON-lines, one entry object per line. An optional first line holding only
// {"dataset_name": ...} names the dataset; otherwise the file stem is used.
// Schema violations report the 1-based line number.
DatasetManifest load_manifest(const std::filesystem::path& path);

void save_manifest(const DatasetManifest& manifest,
                   const std::filesystem::path& path);

}  // namespace perturbkit

#endif  // PERTURBKIT_MANIFEST_HPP_
