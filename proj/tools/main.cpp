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

#include <cstring>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "perturbkit/embeddings.hpp"
#include "perturbkit/engine.hpp"
#include "perturbkit/errors.hpp"
#include "perturbkit/manifest.hpp"
#include "perturbkit/metrics.hpp"
#include "perturbkit/registry.hpp"
#include "perturbkit/report.hpp"
#include "perturbkit/runner.hpp"

namespace {

using namespace perturbkit;

EmbeddingSet load_embeddings_sniffed(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open embeddings: " + path);
  char magic[4] = {0, 0, 0, 0};
  in.read(magic, 4);
  in.close();
  if (std::memcmp(magic, "EMB1", 4) == 0) return read_emb1(path);
  return read_embeddings_csv(path);
}

std::map<std::string, std::string> pairing_from_manifest(
    const DatasetManifest& manifest) {
  std::map<std::string, std::string> pairing;
  for (const ManifestEntry& e : manifest.entries) {
    pairing[e.clip_id] = e.video_id;
  }
  return pairing;
}

std::vector<PerturbationSpec> collect_specs(
    const std::vector<std::string>& args, Modality expect) {
  std::vector<PerturbationSpec> specs;
  for (const std::string& arg : args) {
    for (PerturbationSpec& spec : parse_spec_arg(arg)) {
      if (spec.modality != expect) {
        throw InvalidInput("spec " + spec.label() + " is not a " +
                           (expect == Modality::kVideo ? std::string("video")
                                                       : std::string("text")) +
                           " perturbation");
      }
      specs.push_back(std::move(spec));
    }
  }
  return specs;
}

void with_output(const std::string& out,
                 const std::function<void(std::ostream&)>& fn) {
  if (out.empty() || out == "-") {
    fn(std::cout);
    return;
  }
  std::ofstream f(out, std::ios::trunc);
  if (!f) throw IoError("cannot write: " + out);
  fn(f);
}

int report_run(const RunSummary& summary, uint64_t seed,
               const std::string& out_root) {
  write_run_log(summary, seed, out_root);
  std::cerr << "completed " << summary.completed << ", skipped "
            << summary.skipped << ", failed " << summary.failed << "\n";
  for (const RunRecord& r : summary.records) {
    if (r.failed) {
      std::cerr << "  FAILED " << r.spec.label() << " " << r.clip_id << ": "
                << r.error << "\n";
    }
  }
  return summary.failed == 0 ? 0 : 1;
}

// "LABEL=PATH" pairs for grid embedding inputs.
std::map<std::string, EmbeddingSet> load_labeled(
    const std::vector<std::string>& args) {
  std::map<std::string, EmbeddingSet> out;
  for (const std::string& arg : args) {
    const size_t eq = arg.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw InvalidInput("expected LABEL=PATH, got: " + arg);
    }
    out[arg.substr(0, eq)] = load_embeddings_sniffed(arg.substr(eq + 1));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic video/text perturbation and retrieval "
               "robustness harness"};
  app.require_subcommand(1);

  // perturb-video ------------------------------------------------------
  struct {
    std::string manifest, out, encoder_cmd, layout = "png";
    std::vector<std::string> specs;
    uint64_t seed = 0;
    int workers = 1;
    bool shot_poisson = false;
  } pv;
  CLI::App* perturb_video = app.add_subcommand(
      "perturb-video", "Apply visual perturbations to manifest clips");
  perturb_video->add_option("--manifest", pv.manifest, "JSONL dataset manifest")
      ->required();
  perturb_video
      ->add_option("--spec", pv.specs,
                   "category/name[:severity]; no severity = all five")
      ->required();
  perturb_video->add_option("--seed", pv.seed, "global seed");
  perturb_video->add_option("--workers", pv.workers, "worker threads");
  perturb_video->add_option("--out", pv.out, "output root")->required();
  perturb_video->add_option(
      "--encoder-cmd", pv.encoder_cmd,
      "encoder override: program name, or 'ENCODE ;; DECODE' templates");
  perturb_video->add_option("--layout", pv.layout,
                            "output store layout: png|ppm|raw");
  perturb_video->add_flag("--shot-poisson", pv.shot_poisson,
                          "Poisson shot noise instead of salt-and-pepper");

  // perturb-text -------------------------------------------------------
  struct {
    std::string manifest, out, plugin_cmd, lexicon;
    std::vector<std::string> specs;
    uint64_t seed = 0;
    int workers = 1;
  } pt;
  CLI::App* perturb_text = app.add_subcommand(
      "perturb-text", "Apply text perturbations to manifest captions");
  perturb_text->add_option("--manifest", pt.manifest, "JSONL dataset manifest")
      ->required();
  perturb_text->add_option("--spec", pt.specs, "category/name, repeatable")
      ->required();
  perturb_text->add_option("--seed", pt.seed, "global seed");
  perturb_text->add_option("--workers", pt.workers, "worker threads");
  perturb_text->add_option("--out", pt.out, "output root")->required();
  perturb_text->add_option("--plugin-cmd", pt.plugin_cmd,
                           "external perturber for plugin entries");
  perturb_text->add_option("--lexicon", pt.lexicon, "lexicon directory");

  // eval ---------------------------------------------------------------
  struct {
    std::string manifest, clean_text, clean_video, text, video, spec;
    std::string measure = "dot", format = "jsonl", out;
    std::vector<int> ks{1, 5, 10};
    bool append = false;
  } ev;
  CLI::App* eval_cmd = app.add_subcommand(
      "eval", "Score clean vs perturbed embeddings (R@K, gamma)");
  eval_cmd->add_option("--manifest", ev.manifest, "manifest giving the pairing")
      ->required();
  eval_cmd->add_option("--clean-text", ev.clean_text, "clean text embeddings")
      ->required();
  eval_cmd
      ->add_option("--clean-video", ev.clean_video, "clean video embeddings")
      ->required();
  eval_cmd->add_option("--text", ev.text,
                       "perturbed text embeddings (default: clean)");
  eval_cmd->add_option("--video", ev.video,
                       "perturbed video embeddings (default: clean)");
  eval_cmd->add_option("--spec", ev.spec,
                       "perturbation label attached to the report");
  eval_cmd->add_option("--k", ev.ks, "K values (default 1 5 10)");
  eval_cmd->add_option("--measure", ev.measure, "dot|cosine");
  eval_cmd->add_option("--format", ev.format, "jsonl|csv|json");
  eval_cmd->add_option("--out", ev.out, "output file ('-' = stdout)");
  eval_cmd->add_flag("--append", ev.append, "append to --out (jsonl only)");

  // grid ---------------------------------------------------------------
  struct {
    std::string manifest, clean_text, clean_video;
    std::string measure = "dot", format = "csv", out;
    std::vector<std::string> text_specs, video_specs, text_embs, video_embs;
    int k = 5;
  } gr;
  CLI::App* grid_cmd = app.add_subcommand(
      "grid", "Combined text x video perturbation grid of relative gamma");
  grid_cmd->add_option("--manifest", gr.manifest, "manifest giving the pairing")
      ->required();
  grid_cmd->add_option("--clean-text", gr.clean_text, "clean text embeddings")
      ->required();
  grid_cmd
      ->add_option("--clean-video", gr.clean_video, "clean video embeddings")
      ->required();
  grid_cmd->add_option("--text-spec", gr.text_specs, "text rows, repeatable");
  grid_cmd->add_option("--video-spec", gr.video_specs,
                       "video columns; severity defaults to 3");
  grid_cmd->add_option("--text-emb", gr.text_embs,
                       "LABEL=PATH perturbed text embeddings");
  grid_cmd->add_option("--video-emb", gr.video_embs,
                       "LABEL=PATH perturbed video embeddings");
  grid_cmd->add_option("--k", gr.k, "K for R@K (default 5)");
  grid_cmd->add_option("--measure", gr.measure, "dot|cosine");
  grid_cmd->add_option("--format", gr.format, "csv|json");
  grid_cmd->add_option("--out", gr.out, "output file ('-' = stdout)");

  // aggregate ----------------------------------------------------------
  struct {
    std::string reports, gamma = "abs", format = "csv", out;
    int k = 5;
    bool cell_std = false;
  } ag;
  CLI::App* aggregate_cmd = app.add_subcommand(
      "aggregate", "Per-category mean +- sigma over eval reports");
  aggregate_cmd
      ->add_option("--reports", ag.reports, "JSONL report file from eval")
      ->required();
  aggregate_cmd->add_option("--k", ag.k, "which K to aggregate (default 5)");
  aggregate_cmd->add_option("--gamma", ag.gamma, "abs|rel");
  aggregate_cmd->add_flag(
      "--cell-std", ag.cell_std,
      "sigma over perturbation x severity cells, not per-perturbation means");
  aggregate_cmd->add_option("--format", ag.format, "csv|json");
  aggregate_cmd->add_option("--out", ag.out, "output file ('-' = stdout)");

  // report -------------------------------------------------------------
  struct {
    std::string reports, format = "csv", out;
  } rp;
  CLI::App* report_cmd = app.add_subcommand(
      "report", "Long-format table from eval reports");
  report_cmd->add_option("--reports", rp.reports, "JSONL report file from eval")
      ->required();
  report_cmd->add_option("--format", rp.format, "csv|json");
  report_cmd->add_option("--out", rp.out, "output file ('-' = stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*perturb_video) {
      const DatasetManifest manifest = load_manifest(pv.manifest);
      const std::vector<PerturbationSpec> specs =
          collect_specs(pv.specs, Modality::kVideo);
      RunnerOptions options;
      options.global_seed = pv.seed;
      options.workers = pv.workers;
      options.output_layout = store_layout_from_name(pv.layout);
      options.engine.shot_poisson = pv.shot_poisson;
      if (!pv.encoder_cmd.empty()) {
        options.engine.encoder = EncoderSpec::from_cli(pv.encoder_cmd);
      }
      const RunSummary summary =
          perturb_dataset(manifest, specs, options, pv.out);
      return report_run(summary, pv.seed, pv.out);
    }

    if (*perturb_text) {
      const DatasetManifest manifest = load_manifest(pt.manifest);
      const std::vector<PerturbationSpec> specs =
          collect_specs(pt.specs, Modality::kText);
      RunnerOptions options;
      options.global_seed = pt.seed;
      options.workers = pt.workers;
      options.engine.plugin_cmd = pt.plugin_cmd;
      options.lexicon_dir = pt.lexicon;
      const RunSummary summary =
          perturb_dataset(manifest, specs, options, pt.out);
      return report_run(summary, pt.seed, pt.out);
    }

    if (*eval_cmd) {
      const DatasetManifest manifest = load_manifest(ev.manifest);
      const auto pairing = pairing_from_manifest(manifest);
      const SimilarityMeasure measure = ev.measure == "cosine"
                                            ? SimilarityMeasure::kCosine
                                            : SimilarityMeasure::kDot;
      const EmbeddingSet clean_text = load_embeddings_sniffed(ev.clean_text);
      const EmbeddingSet clean_video = load_embeddings_sniffed(ev.clean_video);
      const EmbeddingSet text =
          ev.text.empty() ? clean_text : load_embeddings_sniffed(ev.text);
      const EmbeddingSet video =
          ev.video.empty() ? clean_video : load_embeddings_sniffed(ev.video);
      RobustnessReport report =
          evaluate(similarity(clean_text, clean_video, measure),
                   similarity(text, video, measure), pairing, ev.ks);
      if (!ev.spec.empty()) {
        PerturbationSpec spec = parse_spec_label(ev.spec);
        spec.validate();
        report.spec = spec;
      }
      if (ev.format == "jsonl") {
        if (ev.out.empty() || ev.out == "-") {
          std::cout << report_to_json(report) << "\n";
        } else {
          std::ofstream f(ev.out, ev.append ? std::ios::app : std::ios::trunc);
          if (!f) throw IoError("cannot write: " + ev.out);
          f << report_to_json(report) << "\n";
        }
      } else {
        with_output(ev.out, [&](std::ostream& out) {
          emit_report({report}, report_format_from_name(ev.format), out);
        });
      }
      return 0;
    }

    if (*grid_cmd) {
      const DatasetManifest manifest = load_manifest(gr.manifest);
      const auto pairing = pairing_from_manifest(manifest);
      const SimilarityMeasure measure = gr.measure == "cosine"
                                            ? SimilarityMeasure::kCosine
                                            : SimilarityMeasure::kDot;
      std::vector<PerturbationSpec> text_specs;
      for (const std::string& label : gr.text_specs) {
        PerturbationSpec spec = parse_spec_label(label);
        spec.validate();
        text_specs.push_back(spec);
      }
      std::vector<PerturbationSpec> video_specs;
      for (const std::string& label : gr.video_specs) {
        PerturbationSpec spec = parse_spec_label(label);
        if (spec.modality == Modality::kVideo && !spec.severity) {
          spec.severity = Severity{3};
        }
        spec.validate();
        video_specs.push_back(spec);
      }
      GridInputs inputs;
      inputs.clean_text = load_embeddings_sniffed(gr.clean_text);
      inputs.clean_video = load_embeddings_sniffed(gr.clean_video);
      inputs.text_by_label = load_labeled(gr.text_embs);
      inputs.video_by_label = load_labeled(gr.video_embs);
      const MultimodalGrid grid = multimodal_grid(
          text_specs, video_specs, inputs, pairing, gr.k, measure);
      with_output(gr.out, [&](std::ostream& out) {
        emit_grid(grid, report_format_from_name(gr.format), out);
      });
      return 0;
    }

    if (*aggregate_cmd) {
      const std::vector<RobustnessReport> reports = load_reports(ag.reports);
      const GammaKind kind =
          ag.gamma == "rel" ? GammaKind::kRel : GammaKind::kAbs;
      AggregateOptions options;
      options.cell_level_std = ag.cell_std;
      const std::vector<AggregateScore> aggregates =
          aggregate(tagged_scores(reports, ag.k, kind), options);
      with_output(ag.out, [&](std::ostream& out) {
        emit_aggregate(aggregates, report_format_from_name(ag.format), out);
      });
      return 0;
    }

    if (*report_cmd) {
      const std::vector<RobustnessReport> reports = load_reports(rp.reports);
      with_output(rp.out, [&](std::ostream& out) {
        emit_report(reports, report_format_from_name(rp.format), out);
      });
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
