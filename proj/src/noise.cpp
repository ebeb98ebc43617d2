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

#include "perturbkit/noise.hpp"

#include "perturbkit/errors.hpp"

namespace perturbkit {
namespace {

void add_normal(Frame& frame, RngStream& rng, double sigma, bool speckle) {
  for (uint8_t& byte : frame.pixels) {
    const double v = byte / 255.0;
    const double n = rng.normal(sigma);
    const double out = speckle ? v + v * n : v + n;
    byte = quantize_u8(out * 255.0);
  }
}

void salt_and_pepper(Frame& frame, RngStream& rng, double amount) {
  const double half = amount / 2.0;
  for (uint8_t& byte : frame.pixels) {
    const double u = rng.uniform();
    if (u < half) {
      byte = 0;
    } else if (u < amount) {
      byte = 255;
    }
  }
}

void shot_poisson(Frame& frame, RngStream& rng, double scale) {
  for (uint8_t& byte : frame.pixels) {
    const double lambda = byte / 255.0 * scale;
    const double out = static_cast<double>(rng.poisson(lambda)) / scale;
    byte = quantize_u8(out * 255.0);
  }
}

}  // namespace

NoiseVariant noise_variant_from_name(const std::string& name) {
  if (name == "gaussian") return NoiseVariant::kGaussian;
  if (name == "shot") return NoiseVariant::kShot;
  if (name == "impulse") return NoiseVariant::kImpulse;
  if (name == "speckle") return NoiseVariant::kSpeckle;
  throw UnknownPerturbation("unknown noise variant: " + name);
}

ClipFrames apply_noise(const ClipFrames& clip, NoiseVariant variant,
                       Severity severity, RngStream& rng,
                       const NoiseOptions& options) {
  clip.validate();
  severity.validate();

  ClipFrames out = clip;
  switch (variant) {
    case NoiseVariant::kGaussian: {
      const double sigma = severity_params("gaussian", severity).at("sigma");
      for (Frame& frame : out.frames) add_normal(frame, rng, sigma, false);
      break;
    }
    case NoiseVariant::kSpeckle: {
      const double sigma = severity_params("speckle", severity).at("sigma");
      for (Frame& frame : out.frames) add_normal(frame, rng, sigma, true);
      break;
    }
    case NoiseVariant::kImpulse: {
      const double amount = severity_params("impulse", severity).at("amount");
      for (Frame& frame : out.frames) salt_and_pepper(frame, rng, amount);
      break;
    }
    case NoiseVariant::kShot: {
      const SeverityParams params = severity_params("shot", severity);
      if (options.shot_poisson) {
        const double scale = params.at("poisson_scale");
        for (Frame& frame : out.frames) shot_poisson(frame, rng, scale);
      } else {
        const double amount = params.at("amount");
        for (Frame& frame : out.frames) salt_and_pepper(frame, rng, amount);
      }
      break;
    }
  }
  return out;
}

}  // namespace perturbkit
