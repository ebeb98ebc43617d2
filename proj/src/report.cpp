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

#include "perturbkit/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "perturbkit/errors.hpp"

namespace perturbkit {
namespace {

using nlohmann::json;

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

json score_to_json(const KScore& ks) {
  json j{{"k", ks.k},
         {"r_clean", ks.score.r_clean},
         {"r_perturbed", ks.score.r_perturbed},
         {"gamma_abs", ks.score.gamma_abs}};
  j["gamma_rel"] = ks.score.gamma_rel ? json(*ks.score.gamma_rel) : json();
  return j;
}

json report_to_json_obj(const RobustnessReport& report) {
  json scores = json::array();
  for (const KScore& ks : report.scores) scores.push_back(score_to_json(ks));
  json j;
  j["spec"] = report.spec ? json(report.spec->label()) : json();
  j["scores"] = std::move(scores);
  return j;
}

RobustnessReport report_from_json_obj(const json& j) {
  RobustnessReport report;
  if (j.contains("spec") && !j.at("spec").is_null()) {
    report.spec = parse_spec_label(j.at("spec").get<std::string>());
  }
  for (const json& s : j.at("scores")) {
    KScore ks;
    ks.k = s.at("k").get<int>();
    ks.score.r_clean = s.at("r_clean").get<double>();
    ks.score.r_perturbed = s.at("r_perturbed").get<double>();
    ks.score.gamma_abs = s.at("gamma_abs").get<double>();
    if (s.contains("gamma_rel") && !s.at("gamma_rel").is_null()) {
      ks.score.gamma_rel = s.at("gamma_rel").get<double>();
    }
    report.scores.push_back(ks);
  }
  return report;
}

struct ReportRow {
  std::string modality;
  std::string category;
  std::string name;
  int severity = 0;  // 0 = none
  int k = 1;
  RobustnessScore score;
};

std::vector<ReportRow> report_rows(const std::vector<RobustnessReport>& reports) {
  std::vector<ReportRow> rows;
  for (const RobustnessReport& report : reports) {
    for (const KScore& ks : report.scores) {
      ReportRow row;
      if (report.spec) {
        row.modality =
            report.spec->modality == Modality::kVideo ? "video" : "text";
        row.category = report.spec->category;
        row.name = report.spec->name;
        row.severity = report.spec->severity ? report.spec->severity->level : 0;
      }
      row.k = ks.k;
      row.score = ks.score;
      rows.push_back(row);
    }
  }
  std::sort(rows.begin(), rows.end(), [](const ReportRow& a, const ReportRow& b) {
    return std::tie(a.modality, a.category, a.name, a.severity, a.k) <
           std::tie(b.modality, b.category, b.name, b.severity, b.k);
  });
  return rows;
}

}  // namespace

RobustnessReport evaluate(const SimilarityMatrix& clean,
                          const SimilarityMatrix& perturbed,
                          const std::map<std::string, std::string>& pairing,
                          const std::vector<int>& ks) {
  if (ks.empty()) throw InvalidInput("no K values requested");
  std::vector<std::string> clean_texts = clean.text_ids;
  std::vector<std::string> perturbed_texts = perturbed.text_ids;
  std::sort(clean_texts.begin(), clean_texts.end());
  std::sort(perturbed_texts.begin(), perturbed_texts.end());
  if (clean_texts != perturbed_texts) {
    throw InvalidInput("clean and perturbed matrices cover different text ids");
  }

  std::vector<int> sorted_ks = ks;
  std::sort(sorted_ks.begin(), sorted_ks.end());
  sorted_ks.erase(std::unique(sorted_ks.begin(), sorted_ks.end()),
                  sorted_ks.end());

  RobustnessReport report;
  for (int k : sorted_ks) {
    KScore ks_entry;
    ks_entry.k = k;
    const double r_clean = recall_at_k(clean, pairing, k);
    const double r_perturbed = recall_at_k(perturbed, pairing, k);
    ks_entry.score = robustness(r_clean, r_perturbed);
    report.scores.push_back(ks_entry);
  }
  return report;
}

std::string report_to_json(const RobustnessReport& report) {
  return report_to_json_obj(report).dump();
}

RobustnessReport report_from_json(const std::string& text) {
  try {
    return report_from_json_obj(json::parse(text));
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("bad report JSON: ") + e.what());
  }
}

std::vector<RobustnessReport> load_reports(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open reports: " + path.string());
  std::vector<RobustnessReport> reports;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      reports.push_back(report_from_json(line));
    } catch (const Error& e) {
      throw InvalidInput("reports line " + std::to_string(line_no) + ": " +
                         e.what());
    }
  }
  return reports;
}

void save_reports(const std::vector<RobustnessReport>& reports,
                  const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write reports: " + path.string());
  for (const RobustnessReport& report : reports) {
    out << report_to_json(report) << "\n";
  }
}

std::vector<TaggedScore> tagged_scores(
    const std::vector<RobustnessReport>& reports, int k, GammaKind kind) {
  std::vector<TaggedScore> out;
  for (const RobustnessReport& report : reports) {
    if (!report.spec) {
      throw InvalidInput("cannot aggregate a report without a spec");
    }
    const auto it = std::find_if(
        report.scores.begin(), report.scores.end(),
        [k](const KScore& ks) { return ks.k == k; });
    if (it == report.scores.end()) {
      throw InvalidInput("report " + report.spec->label() + " lacks K=" +
                         std::to_string(k));
    }
    if (kind == GammaKind::kRel && !it->score.gamma_rel) continue;
    TaggedScore tagged;
    tagged.modality = report.spec->modality;
    tagged.category = report.spec->category;
    tagged.name = report.spec->name;
    tagged.severity = report.spec->severity;
    tagged.gamma = kind == GammaKind::kAbs ? it->score.gamma_abs
                                           : *it->score.gamma_rel;
    out.push_back(tagged);
  }
  return out;
}

MultimodalGrid multimodal_grid(const std::vector<PerturbationSpec>& text_specs,
                               const std::vector<PerturbationSpec>& video_specs,
                               const GridInputs& inputs,
                               const std::map<std::string, std::string>& pairing,
                               int k, SimilarityMeasure measure) {
  for (const PerturbationSpec& spec : text_specs) {
    spec.validate();
    if (spec.modality != Modality::kText) {
      throw InvalidInput("grid row is not a text perturbation: " + spec.label());
    }
  }
  for (const PerturbationSpec& spec : video_specs) {
    spec.validate();
    if (spec.modality != Modality::kVideo) {
      throw InvalidInput("grid column is not a video perturbation: " +
                         spec.label());
    }
  }

  MultimodalGrid grid;
  grid.k = k;
  grid.row_labels.push_back("clean");
  for (const PerturbationSpec& spec : text_specs) {
    grid.row_labels.push_back(spec.label());
  }
  grid.col_labels.push_back("clean");
  for (const PerturbationSpec& spec : video_specs) {
    grid.col_labels.push_back(spec.label());
  }

  grid.r_clean = recall_at_k(
      similarity(inputs.clean_text, inputs.clean_video, measure), pairing, k);
  if (grid.r_clean == 0.0) {
    throw InvalidInput("clean R@K is zero; relative grid undefined");
  }

  auto text_at = [&](size_t row) -> const EmbeddingSet* {
    if (row == 0) return &inputs.clean_text;
    const auto it = inputs.text_by_label.find(grid.row_labels[row]);
    return it == inputs.text_by_label.end() ? nullptr : &it->second;
  };
  auto video_at = [&](size_t col) -> const EmbeddingSet* {
    if (col == 0) return &inputs.clean_video;
    const auto it = inputs.video_by_label.find(grid.col_labels[col]);
    return it == inputs.video_by_label.end() ? nullptr : &it->second;
  };

  grid.cells.resize(grid.row_labels.size() * grid.col_labels.size());
  for (size_t row = 0; row < grid.row_labels.size(); ++row) {
    for (size_t col = 0; col < grid.col_labels.size(); ++col) {
      GridCell& cell = grid.cells[row * grid.col_labels.size() + col];
      const EmbeddingSet* texts = text_at(row);
      const EmbeddingSet* videos = video_at(col);
      if (texts == nullptr || videos == nullptr) continue;
      try {
        const double r =
            recall_at_k(similarity(*texts, *videos, measure), pairing, k);
        cell.present = true;
        cell.r_perturbed = r;
        cell.gamma_rel = 1.0 - (grid.r_clean - r) / grid.r_clean;
      } catch (const std::exception& e) {
        std::cerr << "warning: grid cell (" << grid.row_labels[row] << ", "
                  << grid.col_labels[col] << ") skipped: " << e.what() << "\n";
      }
    }
  }
  return grid;
}

ReportFormat report_format_from_name(const std::string& name) {
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "json") return ReportFormat::kJson;
  throw InvalidInput("unknown report format: " + name);
}

void emit_report(const std::vector<RobustnessReport>& reports,
                 ReportFormat format, std::ostream& out) {
  if (reports.empty()) throw InvalidInput("no reports to emit");
  const std::vector<ReportRow> rows = report_rows(reports);
  if (format == ReportFormat::kCsv) {
    out << "modality,category,perturbation,severity,k,r_clean,r_perturbed,"
           "gamma_abs,gamma_rel\n";
    for (const ReportRow& row : rows) {
      out << csv_field(row.modality) << ',' << csv_field(row.category) << ','
          << csv_field(row.name) << ','
          << (row.severity > 0 ? std::to_string(row.severity) : "") << ','
          << row.k << ',' << fmt_double(row.score.r_clean) << ','
          << fmt_double(row.score.r_perturbed) << ','
          << fmt_double(row.score.gamma_abs) << ','
          << (row.score.gamma_rel ? fmt_double(*row.score.gamma_rel) : "")
          << "\n";
    }
    return;
  }
  json arr = json::array();
  for (const ReportRow& row : rows) {
    json j{{"modality", row.modality}, {"category", row.category},
           {"perturbation", row.name}, {"k", row.k},
           {"r_clean", row.score.r_clean},
           {"r_perturbed", row.score.r_perturbed},
           {"gamma_abs", row.score.gamma_abs}};
    j["severity"] = row.severity > 0 ? json(row.severity) : json();
    j["gamma_rel"] =
        row.score.gamma_rel ? json(*row.score.gamma_rel) : json();
    arr.push_back(std::move(j));
  }
  out << arr.dump(2) << "\n";
}

void emit_aggregate(const std::vector<AggregateScore>& aggregates,
                    ReportFormat format, std::ostream& out) {
  if (aggregates.empty()) throw InvalidInput("no aggregates to emit");
  if (format == ReportFormat::kCsv) {
    out << "modality,category,mean,std,sample_count\n";
    for (const AggregateScore& a : aggregates) {
      out << (a.modality == Modality::kVideo ? "video" : "text") << ','
          << csv_field(a.category) << ',' << fmt_double(a.mean) << ','
          << fmt_double(a.std_dev) << ',' << a.sample_count << "\n";
    }
    return;
  }
  json arr = json::array();
  for (const AggregateScore& a : aggregates) {
    arr.push_back(json{{"modality",
                        a.modality == Modality::kVideo ? "video" : "text"},
                       {"category", a.category},
                       {"mean", a.mean},
                       {"std", a.std_dev},
                       {"sample_count", a.sample_count}});
  }
  out << arr.dump(2) << "\n";
}

void emit_grid(const MultimodalGrid& grid, ReportFormat format,
               std::ostream& out) {
  if (format == ReportFormat::kCsv) {
    out << "text\\video";
    for (const std::string& col : grid.col_labels) out << ',' << csv_field(col);
    out << "\n";
    for (size_t row = 0; row < grid.row_labels.size(); ++row) {
      out << csv_field(grid.row_labels[row]);
      for (size_t col = 0; col < grid.col_labels.size(); ++col) {
        const GridCell& cell = grid.at(row, col);
        out << ',' << (cell.present ? fmt_double(cell.gamma_rel) : "");
      }
      out << "\n";
    }
    return;
  }
  json rows = json::array();
  for (size_t row = 0; row < grid.row_labels.size(); ++row) {
    json cells = json::array();
    for (size_t col = 0; col < grid.col_labels.size(); ++col) {
      const GridCell& cell = grid.at(row, col);
      cells.push_back(cell.present ? json(cell.gamma_rel) : json());
    }
    rows.push_back(std::move(cells));
  }
  const json j{{"k", grid.k},
               {"r_clean", grid.r_clean},
               {"rows", grid.row_labels},
               {"cols", grid.col_labels},
               {"gamma_rel", std::move(rows)}};
  out << j.dump(2) << "\n";
}

}  // namespace perturbkit
