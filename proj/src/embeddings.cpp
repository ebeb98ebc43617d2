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

#include "perturbkit/embeddings.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "perturbkit/errors.hpp"

namespace perturbkit {
namespace {

using nlohmann::json;

uint32_t read_u32_le(std::istream& in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  return static_cast<uint32_t>(b[0]) | static_cast<uint32_t>(b[1]) << 8 |
         static_cast<uint32_t>(b[2]) << 16 | static_cast<uint32_t>(b[3]) << 24;
}

void write_u32_le(std::ostream& out, uint32_t v) {
  const unsigned char b[4] = {
      static_cast<unsigned char>(v & 0xff),
      static_cast<unsigned char>((v >> 8) & 0xff),
      static_cast<unsigned char>((v >> 16) & 0xff),
      static_cast<unsigned char>((v >> 24) & 0xff),
  };
  out.write(reinterpret_cast<const char*>(b), 4);
}

std::filesystem::path ids_sidecar(const std::filesystem::path& path) {
  return path.string() + ".ids.json";
}

}  // namespace

void EmbeddingSet::validate() const {
  if (dim < 1) throw InvalidInput("embedding dim must be >= 1");
  if (data.size() != ids.size() * dim) {
    throw InvalidInput("embedding buffer size does not match count x dim");
  }
  std::set<std::string> seen;
  for (const std::string& id : ids) {
    if (!seen.insert(id).second) {
      throw InvalidInput("duplicate embedding id: " + id);
    }
  }
  for (float v : data) {
    if (!std::isfinite(v)) {
      throw InvalidInput("embedding contains a NaN or infinite value");
    }
  }
  if (normalized) {
    for (size_t i = 0; i < count(); ++i) {
      double norm = 0.0;
      for (size_t d = 0; d < dim; ++d) {
        norm += static_cast<double>(row(i)[d]) * row(i)[d];
      }
      norm = std::sqrt(norm);
      if (std::abs(norm - 1.0) > 1e-4) {
        throw InvalidInput("row " + std::to_string(i) +
                           " not unit-norm despite normalized flag");
      }
    }
  }
}

EmbeddingSet read_emb1(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open: " + path.string());
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, "EMB1", 4) != 0) {
    throw IoError("bad EMB1 magic in " + path.string());
  }
  const uint32_t count = read_u32_le(in);
  const uint32_t dim = read_u32_le(in);
  if (!in) throw IoError("truncated EMB1 header in " + path.string());

  EmbeddingSet set;
  set.dim = dim;
  set.data.resize(static_cast<size_t>(count) * dim);
  static_assert(sizeof(float) == 4);
  in.read(reinterpret_cast<char*>(set.data.data()),
          static_cast<std::streamsize>(set.data.size() * 4));
  if (in.gcount() != static_cast<std::streamsize>(set.data.size() * 4)) {
    throw IoError("truncated EMB1 payload in " + path.string());
  }

  std::ifstream ids_in(ids_sidecar(path));
  if (!ids_in) throw IoError("missing ids sidecar: " + ids_sidecar(path).string());
  json j;
  try {
    ids_in >> j;
  } catch (const json::exception& e) {
    throw IoError("bad ids sidecar " + ids_sidecar(path).string() + ": " +
                  e.what());
  }
  set.ids = j.get<std::vector<std::string>>();
  if (set.ids.size() != count) {
    throw IoError("ids sidecar length " + std::to_string(set.ids.size()) +
                  " != EMB1 count " + std::to_string(count));
  }
  set.validate();
  return set;
}

void write_emb1(const EmbeddingSet& set, const std::filesystem::path& path) {
  set.validate();
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for write: " + path.string());
  out.write("EMB1", 4);
  write_u32_le(out, static_cast<uint32_t>(set.count()));
  write_u32_le(out, static_cast<uint32_t>(set.dim));
  out.write(reinterpret_cast<const char*>(set.data.data()),
            static_cast<std::streamsize>(set.data.size() * 4));
  if (!out) throw IoError("short write: " + path.string());

  std::ofstream ids_out(ids_sidecar(path), std::ios::trunc);
  if (!ids_out) {
    throw IoError("cannot write ids sidecar: " + ids_sidecar(path).string());
  }
  ids_out << json(set.ids).dump() << "\n";
}

EmbeddingSet read_embeddings_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open: " + path.string());
  EmbeddingSet set;
  std::string line;
  size_t row_no = 0;
  while (std::getline(in, line)) {
    ++row_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string field;
    if (!std::getline(fields, field, ',')) {
      throw IoError("row " + std::to_string(row_no) + ": missing id");
    }
    set.ids.push_back(field);
    size_t row_dim = 0;
    while (std::getline(fields, field, ',')) {
      try {
        set.data.push_back(std::stof(field));
      } catch (const std::exception&) {
        throw IoError("row " + std::to_string(row_no) +
                      ": bad float \"" + field + "\"");
      }
      ++row_dim;
    }
    if (set.dim == 0) {
      set.dim = row_dim;
    } else if (row_dim != set.dim) {
      throw IoError("row " + std::to_string(row_no) + ": expected " +
                    std::to_string(set.dim) + " values, got " +
                    std::to_string(row_dim));
    }
  }
  set.validate();
  return set;
}

EmbeddingSet read_embeddings(const std::filesystem::path& path,
                             EmbeddingFormat format) {
  return format == EmbeddingFormat::kEmb1 ? read_emb1(path)
                                          : read_embeddings_csv(path);
}

EmbeddingSet l2_normalize(const EmbeddingSet& set) {
  set.validate();
  EmbeddingSet out = set;
  for (size_t i = 0; i < out.count(); ++i) {
    double norm = 0.0;
    for (size_t d = 0; d < out.dim; ++d) {
      norm += static_cast<double>(out.row(i)[d]) * out.row(i)[d];
    }
    norm = std::sqrt(norm);
    if (norm == 0.0) continue;
    for (size_t d = 0; d < out.dim; ++d) {
      out.row(i)[d] = static_cast<float>(out.row(i)[d] / norm);
    }
  }
  out.normalized = true;
  return out;
}

SimilarityMatrix similarity(const EmbeddingSet& texts,
                            const EmbeddingSet& videos,
                            SimilarityMeasure measure) {
  texts.validate();
  videos.validate();
  if (texts.dim != videos.dim) {
    throw InvalidInput("embedding dimensions differ: " +
                       std::to_string(texts.dim) + " vs " +
                       std::to_string(videos.dim));
  }
  EmbeddingSet normalized_t;
  EmbeddingSet normalized_v;
  const bool cosine = measure == SimilarityMeasure::kCosine;
  if (cosine) {
    normalized_t = l2_normalize(texts);
    normalized_v = l2_normalize(videos);
  }
  const EmbeddingSet& t = cosine ? normalized_t : texts;
  const EmbeddingSet& v = cosine ? normalized_v : videos;

  SimilarityMatrix sim;
  sim.text_ids = t.ids;
  sim.video_ids = v.ids;
  sim.scores.resize(t.count() * v.count());
  for (size_t i = 0; i < t.count(); ++i) {
    for (size_t j = 0; j < v.count(); ++j) {
      double dot = 0.0;
      for (size_t d = 0; d < t.dim; ++d) {
        dot += static_cast<double>(t.row(i)[d]) * v.row(j)[d];
      }
      sim.scores[i * v.count() + j] = dot;
    }
  }
  return sim;
}

}  // namespace perturbkit
