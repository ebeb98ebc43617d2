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

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>
#include <map>
#include <mutex>

#include "perturbkit/embeddings.hpp"
#include "perturbkit/engine.hpp"
#include "perturbkit/errors.hpp"
#include "perturbkit/lexicon.hpp"
#include "perturbkit/metrics.hpp"
#include "perturbkit/registry.hpp"
#include "perturbkit/rng.hpp"

namespace py = pybind11;

namespace {

using namespace perturbkit;

using FrameArray = py::array_t<uint8_t, py::array::c_style | py::array::forcecast>;

ClipFrames clip_from_array(const FrameArray& array, std::pair<int, int> fps) {
  const py::buffer_info info = array.request();
  if (info.ndim != 4 || info.shape[3] != 3) {
    throw InvalidInput("expected a (frames, height, width, 3) uint8 array");
  }
  ClipFrames clip;
  clip.clip_id = "py";
  clip.fps = Rational{fps.first, fps.second};
  const size_t n = info.shape[0];
  const int h = static_cast<int>(info.shape[1]);
  const int w = static_cast<int>(info.shape[2]);
  const size_t frame_bytes = static_cast<size_t>(h) * w * 3;
  const uint8_t* data = static_cast<const uint8_t*>(info.ptr);
  clip.frames.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    Frame frame;
    frame.width = w;
    frame.height = h;
    frame.pixels.assign(data + i * frame_bytes, data + (i + 1) * frame_bytes);
    clip.frames.push_back(std::move(frame));
  }
  clip.validate();
  return clip;
}

py::array_t<uint8_t> clip_to_array(const ClipFrames& clip) {
  const size_t n = clip.frame_count();
  const int h = clip.height();
  const int w = clip.width();
  py::array_t<uint8_t> out({n, static_cast<size_t>(h), static_cast<size_t>(w),
                            static_cast<size_t>(3)});
  uint8_t* data = static_cast<uint8_t*>(out.request().ptr);
  const size_t frame_bytes = static_cast<size_t>(h) * w * 3;
  for (size_t i = 0; i < n; ++i) {
    std::memcpy(data + i * frame_bytes, clip.frames[i].pixels.data(),
                frame_bytes);
  }
  return out;
}

Frame frame_from_array(const FrameArray& array) {
  const py::buffer_info info = array.request();
  if (info.ndim != 3 || info.shape[2] != 3) {
    throw InvalidInput("expected a (height, width, 3) uint8 array");
  }
  Frame frame;
  frame.height = static_cast<int>(info.shape[0]);
  frame.width = static_cast<int>(info.shape[1]);
  const uint8_t* data = static_cast<const uint8_t*>(info.ptr);
  frame.pixels.assign(
      data, data + static_cast<size_t>(frame.height) * frame.width * 3);
  frame.validate();
  return frame;
}

const LexiconBundle& cached_lexicon(const std::string& dir) {
  static std::mutex mutex;
  static std::map<std::string, LexiconBundle> cache;
  const std::string key =
      dir.empty() ? default_lexicon_dir().string() : dir;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, load_lexicon(key)).first;
  return it->second;
}

PerturbationSpec spec_for(const std::string& label, uint64_t seed) {
  PerturbationSpec spec = parse_spec_label(label);
  spec.seed = seed;
  spec.validate();
  return spec;
}

}  // namespace

PYBIND11_MODULE(_perturbkit, m) {
  m.doc() = "Deterministic video/text perturbation engine";

  py::register_exception<Error>(m, "PerturbkitError");

  m.def("video_perturbations", [] {
    py::list out;
    for (const RegistryEntry& e : video_registry()) {
      out.append(py::make_tuple(e.category, e.name));
    }
    return out;
  });
  m.def("text_perturbations", [] {
    py::list out;
    for (const RegistryEntry& e : text_registry()) {
      out.append(py::make_tuple(
          e.category, e.name,
          e.kind == PerturbationKind::kBuiltin ? "builtin" : "plugin"));
    }
    return out;
  });
  m.def(
      "severity_params",
      [](const std::string& name, int level) {
        return severity_params(name, Severity{level});
      },
      py::arg("name"), py::arg("severity"));
  m.def("derive_seed", &derive_seed, py::arg("global_seed"),
        py::arg("clip_id"), py::arg("name"), py::arg("severity") = 0);

  m.def(
      "perturb_clip",
      [](const FrameArray& frames, const std::string& spec_label,
         uint64_t seed, std::pair<int, int> fps, const std::string& encoder_cmd,
         bool shot_poisson) {
        EngineOptions options;
        options.shot_poisson = shot_poisson;
        if (!encoder_cmd.empty()) {
          options.encoder = EncoderSpec::from_cli(encoder_cmd);
        }
        const ClipFrames clip = clip_from_array(frames, fps);
        return clip_to_array(apply_video_perturbation(
            clip, spec_for(spec_label, seed), options));
      },
      py::arg("frames"), py::arg("spec"), py::arg("seed") = 0,
      py::arg("fps") = std::pair<int, int>{30, 1},
      py::arg("encoder_cmd") = "", py::arg("shot_poisson") = false,
      "Apply a visual perturbation (spec 'Category/name:severity') to a "
      "(frames, height, width, 3) uint8 array.");

  m.def(
      "perturb_caption",
      [](const std::string& text, const std::string& spec_label, uint64_t seed,
         const std::string& lexicon_dir, const std::string& plugin_cmd) {
        EngineOptions options;
        options.plugin_cmd = plugin_cmd;
        const Caption caption = Caption::make("py", text);
        return apply_text_perturbation_spec(caption, spec_for(spec_label, seed),
                                            cached_lexicon(lexicon_dir),
                                            options)
            .text;
      },
      py::arg("text"), py::arg("spec"), py::arg("seed") = 0,
      py::arg("lexicon_dir") = "", py::arg("plugin_cmd") = "",
      "Apply a text perturbation (spec 'Category/name') to a caption.");

  m.def(
      "text_similarity",
      [](const std::string& candidate, const std::string& reference) {
        const TextSimilarity s = text_similarity(
            Caption::make("c", candidate), Caption::make("r", reference));
        py::dict out;
        out["bleu4"] = s.bleu4;
        out["rouge_l_f1"] = s.rouge_l_f1;
        out["meteor_lite"] = s.meteor_lite;
        return out;
      },
      py::arg("candidate"), py::arg("reference"));

  m.def(
      "psnr",
      [](const FrameArray& a, const FrameArray& b) {
        return psnr(frame_from_array(a), frame_from_array(b));
      },
      py::arg("a"), py::arg("b"));

  m.def(
      "recall_at_k",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>&
             scores,
         const std::vector<std::string>& text_ids,
         const std::vector<std::string>& video_ids,
         const std::map<std::string, std::string>& pairing, int k) {
        const py::buffer_info info = scores.request();
        if (info.ndim != 2) throw InvalidInput("scores must be 2-D");
        SimilarityMatrix sim;
        sim.text_ids = text_ids;
        sim.video_ids = video_ids;
        const double* data = static_cast<const double*>(info.ptr);
        sim.scores.assign(data, data + info.shape[0] * info.shape[1]);
        if (sim.text_ids.size() != static_cast<size_t>(info.shape[0]) ||
            sim.video_ids.size() != static_cast<size_t>(info.shape[1])) {
          throw InvalidInput("id lists do not match the score shape");
        }
        return recall_at_k(sim, pairing, k);
      },
      py::arg("scores"), py::arg("text_ids"), py::arg("video_ids"),
      py::arg("pairing"), py::arg("k"));

  m.def(
      "robustness",
      [](double r_clean, double r_perturbed) {
        const RobustnessScore s = robustness(r_clean, r_perturbed);
        py::dict out;
        out["gamma_abs"] = s.gamma_abs;
        out["gamma_rel"] =
            s.gamma_rel ? py::object(py::float_(*s.gamma_rel)) : py::none();
        return out;
      },
      py::arg("r_clean"), py::arg("r_perturbed"));

  m.def(
      "write_emb1",
      [](const std::string& path,
         const py::array_t<float, py::array::c_style | py::array::forcecast>&
             vectors,
         const std::vector<std::string>& ids) {
        const py::buffer_info info = vectors.request();
        if (info.ndim != 2) throw InvalidInput("vectors must be 2-D");
        EmbeddingSet set;
        set.ids = ids;
        set.dim = static_cast<size_t>(info.shape[1]);
        const float* data = static_cast<const float*>(info.ptr);
        set.data.assign(data, data + info.shape[0] * info.shape[1]);
        write_emb1(set, path);
      },
      py::arg("path"), py::arg("vectors"), py::arg("ids"));

  m.def(
      "read_emb1",
      [](const std::string& path) {
        const EmbeddingSet set = read_emb1(path);
        py::array_t<float> vectors(
            {set.count(), static_cast<size_t>(set.dim)});
        std::memcpy(vectors.request().ptr, set.data.data(),
                    set.data.size() * sizeof(float));
        return py::make_tuple(vectors, set.ids);
      },
      py::arg("path"));
}
