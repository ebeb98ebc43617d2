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

#ifndef PERTURBKIT_EMBEDDINGS_HPP_
#define PERTURBKIT_EMBEDDINGS_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace perturbkit {

struct EmbeddingSet {
  std::vector<std::string> ids;
  std::vector<float> data;  // row-major, count() x dim
  size_t dim = 0;
  bool normalized = false;

  size_t count() const { return ids.size(); }
  const float* row(size_t i) const { return data.data() + i * dim; }
  float* row(size_t i) { return data.data() + i * dim; }

  // Unique ids, dim >= 1, finite values, buffer size, and (when flagged)
  // unit row norms within 1e-4.
  void validate() const;
};

enum class EmbeddingFormat { kEmb1, kCsv };

// EMB1: magic "EMB1", little-endian u32 count, u32 dim, count*dim
// little-endian f32 row-major.  Row ids live in the "<path>.ids.json"
// sidecar as a JSON string array.
EmbeddingSet read_emb1(const std::filesystem::path& path);
void write_emb1(const EmbeddingSet& set, const std::filesystem::path& path);

// CSV rows "id,v0,v1,...", no header; dimension fixed by the first row.
EmbeddingSet read_embeddings_csv(const std::filesystem::path& path);

EmbeddingSet read_embeddings(const std::filesystem::path& path,
                             EmbeddingFormat format);

// Returns a copy with unit L2 rows; zero rows are left untouched.
EmbeddingSet l2_normalize(const EmbeddingSet& set);

struct SimilarityMatrix {
  std::vector<std::string> text_ids;
  std::vector<std::string> video_ids;
  std::vector<double> scores;  // row-major, text x video

  double at(size_t t, size_t v) const { return scores[t * video_ids.size() + v]; }
};

enum class SimilarityMeasure { kDot, kCosine };

// Pairwise scores with double accumulation in a fixed order.  kCosine
// normalizes both sides defensively regardless of the `normalized` flags.
SimilarityMatrix similarity(const EmbeddingSet& texts,
                            const EmbeddingSet& videos,
                            SimilarityMeasure measure);

}  // namespace perturbkit

#endif  // PERTURBKIT_EMBEDDINGS_HPP_
