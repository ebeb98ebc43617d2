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

#ifndef PERTURBKIT_DIGITAL_HPP_
#define PERTURBKIT_DIGITAL_HPP_

#include <string>
#include <vector>

#include "perturbkit/frame.hpp"
#include "perturbkit/pipe_codec.hpp"
#include "perturbkit/registry.hpp"

namespace perturbkit {

// Baseline JPEG, in memory.  Quality is the libjpeg 1..100 scale.
std::vector<uint8_t> jpeg_encode(const Frame& frame, int quality);
Frame jpeg_decode(const std::vector<uint8_t>& bytes);
Frame jpeg_roundtrip_frame(const Frame& frame, int quality);

ClipFrames apply_jpeg(const ClipFrames& clip, Severity severity);

// mpeg1/mpeg2 compression through an external encoder honoring the RGB24
// pipe contract.  The schedule level maps directly to the encoder quantizer
// ({qscale}).  Frame count may change; fps and geometry are preserved.
ClipFrames apply_mpeg(const ClipFrames& clip, const std::string& name,
                      Severity severity, const EncoderSpec& encoder);

}  // namespace perturbkit

#endif  // PERTURBKIT_DIGITAL_HPP_
