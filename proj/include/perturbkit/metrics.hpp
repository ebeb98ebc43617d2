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

#ifndef PERTURBKIT_METRICS_HPP_
#define PERTURBKIT_METRICS_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "perturbkit/caption.hpp"
#include "perturbkit/embeddings.hpp"
#include "perturbkit/frame.hpp"
#include "perturbkit/registry.hpp"

namespace perturbkit {

// Percentage of text rows whose paired video ranks in the top k by
// similarity. Ranking is descending by score; ties are broken by ascending
// video_id so results do not depend on column order. k > V is clamped to V
// with a warning on stderr; k < 1 or a text_id without a pairing throws.
double recall_at_k(const SimilarityMatrix& sim,
                   const std::map<std::string, std::string>& pairing, int k);

// gamma_abs = 1 - (r_clean - r_perturbed) / 100
// gamma_rel = 1 - (r_clean - r_perturbed) / r_clean, absent when r_clean == 0.
// Either may exceed 1 when the perturbed run scores higher.
struct RobustnessScore {
  double r_clean = 0.0;
  double r_perturbed = 0.0;
  double gamma_abs = 1.0;
  std::optional<double> gamma_rel;
};

RobustnessScore robustness(double r_clean, double r_perturbed);

// One gamma observation tagged with its origin for aggregation. severity is
// absent for text perturbations.
struct TaggedScore {
  Modality modality = Modality::kVideo;
  std::string category;
  std::string name;
  std::optional<Severity> severity;
  double gamma = 0.0;
};

struct AggregateScore {
  Modality modality = Modality::kVideo;
  std::string category;
  double mean = 0.0;
  double std_dev = 0.0;  // population sigma
  size_t sample_count = 0;
};

struct AggregateOptions {
  // Default: average severities per perturbation first, then mean and sigma
  // over the per-perturbation means. When true, both statistics run over the
  // raw perturbation x severity cells instead.
  bool cell_level_std = false;
};

// Per-(modality, category) mean +- population sigma. Output sorted by
// modality (video first), then category. Throws InvalidInput when empty.
std::vector<AggregateScore> aggregate(const std::vector<TaggedScore>& scores,
                                      const AggregateOptions& options = {});

// Caption-to-reference similarity after text perturbation. All in [0, 1].
struct TextSimilarity {
  double bleu4 = 0.0;
  double rouge_l_f1 = 0.0;
  double meteor_lite = 0.0;
};

// bleu4: modified n-gram precision, uniform weights over orders
//   1..min(4, |candidate|, |reference|), brevity penalty, 0 if any order has
//   zero matches.
// rouge_l_f1: F1 from token-level longest common subsequence.
// meteor_lite: unigram matches (exact pass, then light-stem pass, one-to-one
//   left to right), F = P*R / (0.9*P + 0.1*R). No chunk penalty.
// Throws InvalidInput on an empty reference.
TextSimilarity text_similarity(const Caption& candidate,
                               const Caption& reference);

// Lowercases and strips one of -ing/-ed/-es/-s when enough stem remains.
// Shared by meteor_lite and its test oracle.
std::string light_stem(const std::string& word);

// 10 * log10(255^2 / MSE) over all channels; +infinity for identical frames.
// Throws InvalidInput on geometry mismatch.
double psnr(const Frame& a, const Frame& b);

}  // namespace perturbkit

#endif  // PERTURBKIT_METRICS_HPP_
