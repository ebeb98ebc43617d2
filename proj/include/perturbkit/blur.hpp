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

#ifndef PERTURBKIT_BLUR_HPP_
#define PERTURBKIT_BLUR_HPP_

#include <vector>

#include "perturbkit/frame.hpp"
#include "perturbkit/registry.hpp"

namespace perturbkit {

enum class BlurVariant { kMotion, kDefocus, kZoom };

BlurVariant blur_variant_from_name(const std::string& name);

// Horizontal one-sided motion trail: out(x,y) = sum_t w_t * in(x-t, y) for
// t = 0..radius with Gaussian weights w_t ~ exp(-t^2 / (2 sigma^2)),
// normalized.  Edge replication; no randomness.
Frame motion_blur_frame(const Frame& frame, int radius, double sigma);

// Defocus: mean over the binary disk dx^2+dy^2 <= r^2, then a normalized 3x3
// Gaussian with the alias sigma.  Both passes replicate edges.
Frame defocus_blur_frame(const Frame& frame, int radius, double alias_sigma);

// Zoom: average of center-anchored bilinear zooms with factors 1.0, 1.01,
// ... up to max_factor inclusive.
Frame zoom_blur_frame(const Frame& frame, double max_factor, double step);

// Zoom factor ladder for a given ceiling; exposed for inspection.
std::vector<double> zoom_factors(double max_factor, double step);

ClipFrames apply_blur(const ClipFrames& clip, BlurVariant variant,
                      Severity severity);

}  // namespace perturbkit

#endif  // PERTURBKIT_BLUR_HPP_
