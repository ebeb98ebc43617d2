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

#include "perturbkit/manifest.hpp"

#include <fstream>
#include <set>

#include "json.hpp"
#include "perturbkit/errors.hpp"

namespace perturbkit {
namespace {

using nlohmann::json;

[[noreturn]] void fail_line(size_t line_no, const std::string& what) {
  throw InvalidInput("manifest line " + std::to_string(line_no) + ": " + what);
}

std::string require_string(const json& j, const char* key, size_t line_no) {
  if (!j.contains(key)) fail_line(line_no, std::string("missing \"") + key + "\"");
  if (!j.at(key).is_string()) {
    fail_line(line_no, std::string("\"") + key + "\" must be a string");
  }
  return j.at(key).get<std::string>();
}

double require_number(const json& j, const char* key, size_t line_no) {
  if (!j.contains(key)) fail_line(line_no, std::string("missing \"") + key + "\"");
  if (!j.at(key).is_number()) {
    fail_line(line_no, std::string("\"") + key + "\" must be a number");
  }
  return j.at(key).get<double>();
}

}  // namespace

void DatasetManifest::validate() const {
  std::set<std::string> seen;
  for (const ManifestEntry& e : entries) {
    if (e.clip_id.empty()) throw InvalidInput("manifest entry with empty clip_id");
    if (!seen.insert(e.clip_id).second) {
      throw InvalidInput("duplicate clip_id: " + e.clip_id);
    }
    if (!(e.end_sec > e.start_sec)) {
      throw InvalidInput("clip " + e.clip_id + ": end_sec must exceed start_sec");
    }
    if (e.caption.empty()) {
      throw InvalidInput("clip " + e.clip_id + ": empty caption");
    }
  }
}

DatasetManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest: " + path.string());

  DatasetManifest manifest;
  manifest.dataset_name = path.stem().string();

  std::string line;
  size_t line_no = 0;
  bool saw_entry = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      fail_line(line_no, e.what());
    }
    if (!j.is_object()) fail_line(line_no, "expected a JSON object");
    if (!saw_entry && j.contains("dataset_name") && !j.contains("clip_id")) {
      if (!j.at("dataset_name").is_string()) {
        fail_line(line_no, "\"dataset_name\" must be a string");
      }
      manifest.dataset_name = j.at("dataset_name").get<std::string>();
      continue;
    }
    saw_entry = true;
    ManifestEntry entry;
    entry.clip_id = require_string(j, "clip_id", line_no);
    entry.source_path = require_string(j, "source_path", line_no);
    entry.start_sec = require_number(j, "start_sec", line_no);
    entry.end_sec = require_number(j, "end_sec", line_no);
    entry.caption = require_string(j, "caption", line_no);
    entry.video_id = require_string(j, "video_id", line_no);
    if (!(entry.end_sec > entry.start_sec)) {
      fail_line(line_no, "end_sec must exceed start_sec for clip " + entry.clip_id);
    }
    if (entry.caption.empty()) {
      fail_line(line_no, "empty caption for clip " + entry.clip_id);
    }
    manifest.entries.push_back(std::move(entry));
  }
  manifest.validate();
  return manifest;
}

void save_manifest(const DatasetManifest& manifest,
                   const std::filesystem::path& path) {
  manifest.validate();
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write manifest: " + path.string());
  if (!manifest.dataset_name.empty()) {
    out << json{{"dataset_name", manifest.dataset_name}}.dump() << "\n";
  }
  for (const ManifestEntry& e : manifest.entries) {
    json j{{"clip_id", e.clip_id},         {"source_path", e.source_path},
           {"start_sec", e.start_sec},     {"end_sec", e.end_sec},
           {"caption", e.caption},         {"video_id", e.video_id}};
    out << j.dump() << "\n";
  }
}

}  // namespace perturbkit
