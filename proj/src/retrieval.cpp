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

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>

#include "perturbkit/errors.hpp"
#include "perturbkit/metrics.hpp"

namespace perturbkit {

double recall_at_k(const SimilarityMatrix& sim,
                   const std::map<std::string, std::string>& pairing, int k) {
  if (k < 1) throw InvalidInput("k must be >= 1");
  const size_t rows = sim.text_ids.size();
  const size_t cols = sim.video_ids.size();
  if (rows == 0 || cols == 0) throw InvalidInput("empty similarity matrix");
  if (sim.scores.size() != rows * cols) {
    throw InvalidInput("similarity matrix shape mismatch");
  }
  if (static_cast<size_t>(k) > cols) {
    std::cerr << "warning: k=" << k << " exceeds " << cols
              << " videos; clamping\n";
    k = static_cast<int>(cols);
  }

  std::map<std::string, size_t> column_of;
  for (size_t j = 0; j < cols; ++j) column_of[sim.video_ids[j]] = j;

  size_t hits = 0;
  for (size_t i = 0; i < rows; ++i) {
    const auto pair_it = pairing.find(sim.text_ids[i]);
    if (pair_it == pairing.end()) {
      throw InvalidInput("no pairing for text id: " + sim.text_ids[i]);
    }
    const auto col_it = column_of.find(pair_it->second);
    if (col_it == column_of.end()) {
      throw InvalidInput("paired video id not in matrix: " + pair_it->second);
    }
    const size_t target = col_it->second;
    const double target_score = sim.at(i, target);
    if (!std::isfinite(target_score)) {
      throw InvalidInput("non-finite similarity score");
    }
    // rank = 1 + strictly better columns + tied columns with a smaller id.
    size_t rank = 1;
    for (size_t j = 0; j < cols; ++j) {
      if (j == target) continue;
      const double s = sim.at(i, j);
      if (!std::isfinite(s)) throw InvalidInput("non-finite similarity score");
      if (s > target_score ||
          (s == target_score && sim.video_ids[j] < sim.video_ids[target])) {
        ++rank;
      }
    }
    if (rank <= static_cast<size_t>(k)) ++hits;
  }
  return 100.0 * static_cast<double>(hits) / static_cast<double>(rows);
}

RobustnessScore robustness(double r_clean, double r_perturbed) {
  if (r_clean < 0.0 || r_clean > 100.0 || r_perturbed < 0.0 ||
      r_perturbed > 100.0) {
    throw InvalidInput("recall percentages must lie in [0, 100]");
  }
  RobustnessScore score;
  score.r_clean = r_clean;
  score.r_perturbed = r_perturbed;
  score.gamma_abs = 1.0 - (r_clean - r_perturbed) / 100.0;
  if (r_clean > 0.0) {
    score.gamma_rel = 1.0 - (r_clean - r_perturbed) / r_clean;
  }
  return score;
}

namespace {

struct Moments {
  double mean = 0.0;
  double std_dev = 0.0;
};

Moments moments(const std::vector<double>& values) {
  Moments m;
  for (double v : values) m.mean += v;
  m.mean /= static_cast<double>(values.size());
  double sq = 0.0;
  for (double v : values) sq += (v - m.mean) * (v - m.mean);
  m.std_dev = std::sqrt(sq / static_cast<double>(values.size()));
  return m;
}

}  // namespace

std::vector<AggregateScore> aggregate(const std::vector<TaggedScore>& scores,
                                      const AggregateOptions& options) {
  if (scores.empty()) throw InvalidInput("no scores to aggregate");

  // (modality, category) -> name -> gamma cells, ordered for determinism.
  std::map<std::pair<int, std::string>, std::map<std::string, std::vector<double>>>
      groups;
  for (const TaggedScore& s : scores) {
    if (s.category.empty() || s.name.empty()) {
      throw InvalidInput("tagged score missing category or name");
    }
    groups[{s.modality == Modality::kVideo ? 0 : 1, s.category}][s.name]
        .push_back(s.gamma);
  }

  std::vector<AggregateScore> out;
  for (const auto& [group, by_name] : groups) {
    std::vector<double> samples;
    for (const auto& [name, cells] : by_name) {
      if (options.cell_level_std) {
        samples.insert(samples.end(), cells.begin(), cells.end());
      } else {
        double mean = 0.0;
        for (double v : cells) mean += v;
        samples.push_back(mean / static_cast<double>(cells.size()));
      }
    }
    const Moments m = moments(samples);
    AggregateScore agg;
    agg.modality = group.first == 0 ? Modality::kVideo : Modality::kText;
    agg.category = group.second;
    agg.mean = m.mean;
    agg.std_dev = m.std_dev;
    agg.sample_count = samples.size();
    out.push_back(agg);
  }
  return out;
}

double psnr(const Frame& a, const Frame& b) {
  a.validate();
  b.validate();
  if (!a.same_geometry(b)) throw InvalidInput("psnr geometry mismatch");
  double sq = 0.0;
  for (size_t i = 0; i < a.pixels.size(); ++i) {
    const double d = static_cast<double>(a.pixels[i]) - b.pixels[i];
    sq += d * d;
  }
  if (sq == 0.0) return std::numeric_limits<double>::infinity();
  const double mse = sq / static_cast<double>(a.pixels.size());
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

}  // namespace perturbkit
