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

#ifndef PERTURBKIT_FRAME_STORE_HPP_
#define PERTURBKIT_FRAME_STORE_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "perturbkit/frame.hpp"

namespace perturbkit {

// On-disk clip layouts.
//   kFrameDirPng / kFrameDirPpm: `path` is a directory of 000000.png (or
//     .ppm) frames plus meta.json.
//   kPackedRaw: `path` is one file of concatenated RGB24 frames; geometry
//     lives in the <path>.json sidecar.
enum class StoreLayout { kFrameDirPng, kFrameDirPpm, kPackedRaw };

struct FrameStore {
  StoreLayout layout = StoreLayout::kFrameDirPng;
  std::filesystem::path path;
};

StoreLayout store_layout_from_name(const std::string& name);
std::string store_layout_name(StoreLayout layout);

// Detects the layout from what is on disk: a directory is a frame dir (ppm
// when 000000.ppm exists, png otherwise), a regular file is packed raw.
FrameStore open_store(const std::filesystem::path& path);

// Extra fields merged into the geometry sidecar on write (spec label, seed,
// lexicon and tool versions).  Values are free-form strings.
using StoreMeta = std::vector<std::pair<std::string, std::string>>;

void write_clip(const ClipFrames& clip, const FrameStore& store,
                const StoreMeta& meta = {});

// Reads the whole stored clip.
ClipFrames read_clip(const FrameStore& store, const std::string& clip_id);

// Reads the frame window [floor(start_sec*fps), floor(end_sec*fps)) at the
// fps recorded in the sidecar.  A window extending past the stored frames is
// truncated with a warning on stderr; a window that starts past the end
// throws.
ClipFrames read_clip(const FrameStore& store, const std::string& clip_id,
                     double start_sec, double end_sec);

// Single-image codecs backing the store; exposed for tests and tools.
void write_png(const Frame& frame, const std::filesystem::path& path);
Frame read_png(const std::filesystem::path& path);
void write_ppm(const Frame& frame, const std::filesystem::path& path);
Frame read_ppm(const std::filesystem::path& path);

}  // namespace perturbkit

#endif  // PERTURBKIT_FRAME_STORE_HPP_
