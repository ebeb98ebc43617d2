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

#include "perturbkit/camera.hpp"

#include <algorithm>
#include <cmath>

#include "perturbkit/errors.hpp"

namespace perturbkit {
namespace {

constexpr double kPi = 3.14159265358979323846;

inline int clamp_coord(int v, int hi) { return std::clamp(v, 0, hi); }

inline int round_half_away(double v) {
  return static_cast<int>(v >= 0.0 ? std::floor(v + 0.5) : std::ceil(v - 0.5));
}

// Bilinear sample with edge replication, one channel.
double sample_bilinear(const Frame& frame, double x, double y, int c) {
  const int w = frame.width;
  const int h = frame.height;
  const double fx = std::floor(x);
  const double fy = std::floor(y);
  const int x0 = clamp_coord(static_cast<int>(fx), w - 1);
  const int y0 = clamp_coord(static_cast<int>(fy), h - 1);
  const int x1 = clamp_coord(x0 + 1, w - 1);
  const int y1 = clamp_coord(y0 + 1, h - 1);
  double ax = x - fx;
  double ay = y - fy;
  if (x < 0.0) ax = 0.0;
  if (y < 0.0) ay = 0.0;
  if (x > w - 1.0) ax = 1.0;
  if (y > h - 1.0) ay = 1.0;
  const double top = frame.at(x0, y0, c) * (1.0 - ax) + frame.at(x1, y0, c) * ax;
  const double bot = frame.at(x0, y1, c) * (1.0 - ax) + frame.at(x1, y1, c) * ax;
  return top * (1.0 - ay) + bot * ay;
}

}  // namespace

CameraVariant camera_variant_from_name(const std::string& name) {
  if (name == "static_rotate") return CameraVariant::kStaticRotate;
  if (name == "rotate") return CameraVariant::kRotate;
  if (name == "translate") return CameraVariant::kTranslate;
  throw UnknownPerturbation("unknown camera variant: " + name);
}

std::vector<double> plan_rotate(size_t frame_count, CameraVariant variant,
                                Severity severity, RngStream& rng) {
  severity.validate();
  std::vector<double> angles(frame_count);
  if (variant == CameraVariant::kStaticRotate) {
    const double angle =
        severity_params("static_rotate", severity).at("angle_deg");
    std::fill(angles.begin(), angles.end(), angle);
  } else if (variant == CameraVariant::kRotate) {
    const double angle =
        severity_params("rotate", severity).at("max_angle_deg");
    for (double& a : angles) a = rng.uniform(-angle, angle);
  } else {
    throw InvalidInput("plan_rotate: translate has no angles");
  }
  return angles;
}

std::vector<TranslateOffset> plan_translate(size_t frame_count, int width,
                                            int height, Severity severity,
                                            RngStream& rng) {
  severity.validate();
  if (width <= 0 || height <= 0) throw InvalidInput("plan_translate: geometry");
  const double frac =
      severity_params("translate", severity).at("offset_frac");
  const double d = frac * std::min(width, height);
  std::vector<TranslateOffset> offsets(frame_count);
  for (TranslateOffset& o : offsets) {
    o.dx = rng.uniform(-d, d);
    o.dy = rng.uniform(-d, d);
  }
  return offsets;
}

Frame rotate_frame(const Frame& frame, double angle_deg) {
  frame.validate();
  const double theta = angle_deg * kPi / 180.0;
  const double cos_t = std::cos(theta);
  const double sin_t = std::sin(theta);
  const double cx = (frame.width - 1) / 2.0;
  const double cy = (frame.height - 1) / 2.0;

  Frame out;
  out.width = frame.width;
  out.height = frame.height;
  out.pixels.resize(frame.pixels.size());
  size_t idx = 0;
  for (int y = 0; y < frame.height; ++y) {
    for (int x = 0; x < frame.width; ++x) {
      // Inverse map: rotate the output coordinate by -theta about the center.
      const double rx = x - cx;
      const double ry = y - cy;
      const double sx = cx + rx * cos_t + ry * sin_t;
      const double sy = cy - rx * sin_t + ry * cos_t;
      for (int c = 0; c < 3; ++c) {
        out.pixels[idx++] = quantize_u8(sample_bilinear(frame, sx, sy, c));
      }
    }
  }
  return out;
}

Frame translate_frame(const Frame& frame, int shift_x, int shift_y) {
  frame.validate();
  Frame out;
  out.width = frame.width;
  out.height = frame.height;
  out.pixels.resize(frame.pixels.size());
  size_t idx = 0;
  for (int y = 0; y < frame.height; ++y) {
    const int sy = clamp_coord(y + shift_y, frame.height - 1);
    for (int x = 0; x < frame.width; ++x) {
      const int sx = clamp_coord(x + shift_x, frame.width - 1);
      for (int c = 0; c < 3; ++c) {
        out.pixels[idx++] = frame.at(sx, sy, c);
      }
    }
  }
  return out;
}

ClipFrames apply_camera(const ClipFrames& clip, CameraVariant variant,
                        Severity severity, RngStream& rng) {
  clip.validate();
  ClipFrames out;
  out.clip_id = clip.clip_id;
  out.fps = clip.fps;
  out.frames.reserve(clip.frames.size());

  if (variant == CameraVariant::kTranslate) {
    const std::vector<TranslateOffset> offsets =
        plan_translate(clip.frame_count(), clip.width(), clip.height(),
                       severity, rng);
    for (size_t i = 0; i < clip.frames.size(); ++i) {
      out.frames.push_back(translate_frame(clip.frames[i],
                                           round_half_away(offsets[i].dx),
                                           round_half_away(offsets[i].dy)));
    }
  } else {
    const std::vector<double> angles =
        plan_rotate(clip.frame_count(), variant, severity, rng);
    for (size_t i = 0; i < clip.frames.size(); ++i) {
      out.frames.push_back(rotate_frame(clip.frames[i], angles[i]));
    }
  }
  return out;
}

}  // namespace perturbkit
