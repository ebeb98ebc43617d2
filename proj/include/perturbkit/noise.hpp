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

#ifndef PERTURBKIT_NOISE_HPP_
#define PERTURBKIT_NOISE_HPP_

#include "perturbkit/frame.hpp"
#include "perturbkit/registry.hpp"
#include "perturbkit/rng.hpp"

namespace perturbkit {

enum class NoiseVariant { kGaussian, kShot, kImpulse, kSpeckle };

struct NoiseOptions {
  // Shot noise defaults to the same salt-and-pepper schedule as impulse.
  // Setting this runs the Poisson alternative instead (per-severity
  // poisson_scale from the schedule).
  bool shot_poisson = false;
};

// Per-frame independent noise drawn from rng in frame order, byte order.
// Geometry, frame count and fps are preserved.
//   gaussian: x' = clamp(x/255 + N(0,sigma)) * 255
//   speckle:  x' = clamp(x/255 + (x/255)*N(0,sigma)) * 255
//   impulse/shot: each channel value flipped to 0 or 255 with prob amount
//   shot (poisson mode): x' = clamp(Poisson(x/255*scale)/scale) * 255
ClipFrames apply_noise(const ClipFrames& clip, NoiseVariant variant,
                       Severity severity, RngStream& rng,
                       const NoiseOptions& options = {});

NoiseVariant noise_variant_from_name(const std::string& name);

}  // namespace perturbkit

#endif  // PERTURBKIT_NOISE_HPP_
