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

#include "perturbkit/engine.hpp"

#include "perturbkit/blur.hpp"
#include "perturbkit/camera.hpp"
#include "perturbkit/digital.hpp"
#include "perturbkit/errors.hpp"
#include "perturbkit/noise.hpp"
#include "perturbkit/plugin.hpp"
#include "perturbkit/rng.hpp"
#include "perturbkit/temporal.hpp"
#include "perturbkit/text_perturb.hpp"

namespace perturbkit {

ClipFrames apply_video_perturbation(const ClipFrames& clip,
                                    const PerturbationSpec& spec,
                                    const EngineOptions& options) {
  spec.validate();
  if (spec.modality != Modality::kVideo) {
    throw InvalidInput("spec " + spec.label() + " is not a video perturbation");
  }
  const RegistryEntry* entry = find_perturbation(Modality::kVideo, spec.name);
  if (entry == nullptr) throw UnknownPerturbation(spec.name);
  const Severity severity = *spec.severity;
  RngStream rng(spec.seed);

  if (entry->category == "Noise") {
    NoiseOptions noise_options;
    noise_options.shot_poisson = options.shot_poisson;
    return apply_noise(clip, noise_variant_from_name(spec.name), severity, rng,
                       noise_options);
  }
  if (entry->category == "Blur") {
    return apply_blur(clip, blur_variant_from_name(spec.name), severity);
  }
  if (entry->category == "Camera") {
    return apply_camera(clip, camera_variant_from_name(spec.name), severity,
                        rng);
  }
  if (entry->category == "Digital") {
    if (spec.name == "jpeg") return apply_jpeg(clip, severity);
    const EncoderSpec encoder =
        options.encoder ? *options.encoder : EncoderSpec::ffmpeg_default();
    return apply_mpeg(clip, spec.name, severity, encoder);
  }
  if (entry->category == "Temporal") {
    return apply_temporal(clip, temporal_variant_from_name(spec.name),
                          severity, rng);
  }
  throw UnknownPerturbation(spec.label());
}

Caption apply_text_perturbation_spec(const Caption& caption,
                                     const PerturbationSpec& spec,
                                     const LexiconBundle& lexicon,
                                     const EngineOptions& options) {
  spec.validate();
  if (spec.modality != Modality::kText) {
    throw InvalidInput("spec " + spec.label() + " is not a text perturbation");
  }
  const RegistryEntry* entry = find_perturbation(Modality::kText, spec.name);
  if (entry == nullptr) throw UnknownPerturbation(spec.name);

  if (entry->kind == PerturbationKind::kPlugin) {
    if (options.plugin_cmd.empty()) {
      throw PluginError("perturbation " + spec.name +
                        " needs --plugin-cmd (model-based, not built in)");
    }
    std::vector<Caption> out = run_plugin({caption}, options.plugin_cmd);
    return out.front();
  }

  RngStream rng(spec.seed);
  return apply_text_perturbation(caption, spec.name, rng, lexicon);
}

}  // namespace perturbkit
