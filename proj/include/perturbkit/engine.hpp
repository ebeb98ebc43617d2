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

#ifndef PERTURBKIT_ENGINE_HPP_
#define PERTURBKIT_ENGINE_HPP_

#include <optional>
#include <string>

#include "perturbkit/caption.hpp"
#include "perturbkit/frame.hpp"
#include "perturbkit/lexicon.hpp"
#include "perturbkit/pipe_codec.hpp"
#include "perturbkit/registry.hpp"

namespace perturbkit {

struct EngineOptions {
  // Encoder templates for mpeg1/mpeg2. Defaults to the ffmpeg-shaped
  // pipeline when absent.
  std::optional<EncoderSpec> encoder;
  // Draw shot noise from a Poisson photon model instead of the default
  // salt-and-pepper schedule.
  bool shot_poisson = false;
  // External perturber command for plugin-kind text perturbations. Empty
  // means plugin specs are rejected with PluginError.
  std::string plugin_cmd;
};

// Applies any registered video perturbation. The spec's seed drives all
// randomness; identical (input, spec) pairs give byte-identical outputs.
ClipFrames apply_video_perturbation(const ClipFrames& clip,
                                    const PerturbationSpec& spec,
                                    const EngineOptions& options = {});

// Applies any registered text perturbation. Builtins use (seed, lexicon);
// plugin entries shell out to options.plugin_cmd.
Caption apply_text_perturbation_spec(const Caption& caption,
                                     const PerturbationSpec& spec,
                                     const LexiconBundle& lexicon,
                                     const EngineOptions& options = {});

}  // namespace perturbkit

#endif  // PERTURBKIT_ENGINE_HPP_
