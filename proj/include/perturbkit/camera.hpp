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

#ifndef PERTURBKIT_CAMERA_HPP_
#define PERTURBKIT_CAMERA_HPP_

#include <vector>

#include "perturbkit/frame.hpp"
#include "perturbkit/registry.hpp"
#include "perturbkit/rng.hpp"

namespace perturbkit {

enum class CameraVariant { kStaticRotate, kRotate, kTranslate };

struct TranslateOffset {
  double dx = 0.0;
  double dy = 0.0;
};

CameraVariant camera_variant_from_name(const std::string& name);

// Per-frame rotation angles in degrees.  static_rotate uses the schedule
// angle for every frame; rotate draws each frame angle uniformly from
// [-angle, +angle].
std::vector<double> plan_rotate(size_t frame_count, CameraVariant variant,
                                Severity severity, RngStream& rng);

// Per-frame continuous offsets drawn uniformly from [-d, +d] per axis with
// d = offset_frac * min(width, height).  The applied shift rounds each
// component to the nearest integer (half away from zero).
std::vector<TranslateOffset> plan_translate(size_t frame_count, int width,
                                            int height, Severity severity,
                                            RngStream& rng);

// Rotation about the frame center with bilinear sampling; translate crops the
// shifted view.  Pixels leaving the frame are filled by edge replication.
Frame rotate_frame(const Frame& frame, double angle_deg);
Frame translate_frame(const Frame& frame, int shift_x, int shift_y);

ClipFrames apply_camera(const ClipFrames& clip, CameraVariant variant,
                        Severity severity, RngStream& rng);

}  // namespace perturbkit

#endif  // PERTURBKIT_CAMERA_HPP_
