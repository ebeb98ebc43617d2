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

#ifndef PERTURBKIT_REPORT_HPP_
#define PERTURBKIT_REPORT_HPP_

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "perturbkit/embeddings.hpp"
#include "perturbkit/metrics.hpp"
#include "perturbkit/registry.hpp"

namespace perturbkit {

// Clean-vs-perturbed retrieval comparison at each requested K.
struct KScore {
  int k = 1;
  RobustnessScore score;
};

struct RobustnessReport {
  // The perturbed condition; absent for ad-hoc comparisons.
  std::optional<PerturbationSpec> spec;
  std::vector<KScore> scores;  // ascending k
};

// R@K on both matrices for every k, then the robustness formulas. Both
// matrices must cover the same text ids (any order); pairing maps text ids to
// video ids present in both.
RobustnessReport evaluate(const SimilarityMatrix& clean,
                          const SimilarityMatrix& perturbed,
                          const std::map<std::string, std::string>& pairing,
                          const std::vector<int>& ks);

// JSON round-trip so eval output can feed aggregate/report runs.
std::string report_to_json(const RobustnessReport& report);
RobustnessReport report_from_json(const std::string& text);
std::vector<RobustnessReport> load_reports(const std::filesystem::path& path);
void save_reports(const std::vector<RobustnessReport>& reports,
                  const std::filesystem::path& path);

enum class GammaKind { kAbs, kRel };

// Flattens reports into aggregation inputs at one K. Reports without a spec
// are rejected; undefined gamma_rel observations are dropped.
std::vector<TaggedScore> tagged_scores(
    const std::vector<RobustnessReport>& reports, int k, GammaKind kind);

// Fig.-6-shaped combined perturbation grid. Row 0 / column 0 are the clean
// margins, so cell (0,0) is exactly 1. Interior cells combine one text and
// one video condition. Missing embeddings leave holes instead of failing.
struct GridCell {
  bool present = false;
  double r_perturbed = 0.0;
  double gamma_rel = 0.0;
};

struct MultimodalGrid {
  int k = 5;
  double r_clean = 0.0;
  std::vector<std::string> row_labels;  // "clean" + text spec labels
  std::vector<std::string> col_labels;  // "clean" + video spec labels
  std::vector<GridCell> cells;          // row-major rows x cols

  const GridCell& at(size_t row, size_t col) const {
    return cells[row * col_labels.size() + col];
  }
};

struct GridInputs {
  EmbeddingSet clean_text;
  EmbeddingSet clean_video;
  // Keyed by spec label ("DropText/NoNN", "Noise/gaussian:3").
  std::map<std::string, EmbeddingSet> text_by_label;
  std::map<std::string, EmbeddingSet> video_by_label;
};

MultimodalGrid multimodal_grid(const std::vector<PerturbationSpec>& text_specs,
                               const std::vector<PerturbationSpec>& video_specs,
                               const GridInputs& inputs,
                               const std::map<std::string, std::string>& pairing,
                               int k, SimilarityMeasure measure);

enum class ReportFormat { kCsv, kJson };

ReportFormat report_format_from_name(const std::string& name);

// Long-format table, one row per (spec, k); fixed column order, RFC-4180
// quoting, rows sorted by (modality, category, name, severity, k). Identical
// inputs give byte-identical output.
void emit_report(const std::vector<RobustnessReport>& reports,
                 ReportFormat format, std::ostream& out);

// Per-category mean +- sigma table.
void emit_aggregate(const std::vector<AggregateScore>& aggregates,
                    ReportFormat format, std::ostream& out);

// Grid emission; holes become empty CSV fields / JSON nulls.
void emit_grid(const MultimodalGrid& grid, ReportFormat format,
               std::ostream& out);

}  // namespace perturbkit

#endif  // PERTURBKIT_REPORT_HPP_
