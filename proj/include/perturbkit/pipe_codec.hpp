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

#ifndef PERTURBKIT_PIPE_CODEC_HPP_
#define PERTURBKIT_PIPE_CODEC_HPP_

#include <map>
#include <string>

#include "perturbkit/frame.hpp"

namespace perturbkit {

// External codec pipe contract.  The encode command reads raw RGB24 frames
// (row-major, frame after frame) on stdin and writes the compressed stream
// to the file named by {output}.  The decode command reads {input} and
// writes raw RGB24 frames to stdout.  Supported placeholders: {width}
// {height} {fps} {codec} {format} {qscale} {output} {input}.
struct EncoderSpec {
  std::string encode_template;
  std::string decode_template;

  // ffmpeg commands implementing the contract.
  static EncoderSpec ffmpeg_default();

  // Parses a user-supplied override: either "ENCODE ;; DECODE" holding both
  // templates, or a bare program name substituted for "ffmpeg" in the
  // defaults.
  static EncoderSpec from_cli(const std::string& value);
};

std::string expand_template(const std::string& templ,
                            const std::map<std::string, std::string>& vars);

// Round trip: encode the clip to a temporary file, decode it back.  The
// decoded frame count may differ from the input (codec group-of-pictures
// padding); geometry and fps are preserved.  Throws EncoderMissing when the
// command cannot be found (shell exit 127), EncoderFailed on any other
// encoder or stream error.
ClipFrames pipe_through_encoder(const ClipFrames& clip,
                                const std::string& codec_name, int qscale,
                                const EncoderSpec& spec);

}  // namespace perturbkit

#endif  // PERTURBKIT_PIPE_CODEC_HPP_
