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

#include "perturbkit/blur.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "perturbkit/errors.hpp"

namespace perturbkit {
namespace {

inline int clampi(int v, int hi) { return std::clamp(v, 0, hi); }

// Disk mean via per-row prefix sums over an edge-replicated pad: each disk
// row offset dy covers the span x +- half_width(dy), so a window sum is one
// subtract of two prefix entries. Integer adds reassociate freely, so the
// result matches the naive per-pixel sum exactly.
void disk_mean(const Frame& in, int radius, std::vector<double>& out) {
  const int w = in.width;
  const int h = in.height;
  const int pad = radius;
  const size_t pw = static_cast<size_t>(w) + 2 * pad + 1;
  const size_t plane = static_cast<size_t>(w) * h;

  // prefix[(c*h + y)*pw + i+1] = sum of the first i+1 padded row values.
  std::vector<uint32_t> prefix(3 * static_cast<size_t>(h) * pw);
  for (int y = 0; y < h; ++y) {
    const uint8_t* row = &in.pixels[static_cast<size_t>(y) * w * 3];
    for (int c = 0; c < 3; ++c) {
      uint32_t* pp = &prefix[(static_cast<size_t>(c) * h + y) * pw];
      uint32_t s = 0;
      pp[0] = 0;
      for (size_t i = 0; i + 1 < pw; ++i) {
        s += row[clampi(static_cast<int>(i) - pad, w - 1) * 3 + c];
        pp[i + 1] = s;
      }
    }
  }

  std::vector<uint32_t> acc(3 * plane, 0);
  uint64_t disk_count = 0;
  for (int dy = -radius; dy <= radius; ++dy) {
    const int half =
        static_cast<int>(std::floor(std::sqrt(
            static_cast<double>(radius) * radius - static_cast<double>(dy) * dy)));
    disk_count += 2 * half + 1;
    for (int y = 0; y < h; ++y) {
      const int sy = clampi(y + dy, h - 1);
      for (int c = 0; c < 3; ++c) {
        const uint32_t* pp = &prefix[(static_cast<size_t>(c) * h + sy) * pw];
        const uint32_t* wlo = pp + (pad - half);
        const uint32_t* whi = pp + (pad + half + 1);
        uint32_t* arow = &acc[static_cast<size_t>(c) * plane +
                              static_cast<size_t>(y) * w];
        for (int x = 0; x < w; ++x) {
          arow[x] += whi[x] - wlo[x];
        }
      }
    }
  }

  out.resize(3 * plane);
  const double inv = 1.0 / static_cast<double>(disk_count);
  for (size_t i = 0; i < plane; ++i) {
    out[i * 3] = acc[i] * inv;
    out[i * 3 + 1] = acc[plane + i] * inv;
    out[i * 3 + 2] = acc[2 * plane + i] * inv;
  }
}

void gauss3(const std::vector<double>& in, int w, int h, double sigma,
            Frame& out) {
  double k[3];
  k[0] = std::exp(-1.0 / (2.0 * sigma * sigma));
  k[1] = 1.0;
  k[2] = k[0];
  const double norm = k[0] + k[1] + k[2];
  for (double& v : k) v /= norm;

  std::vector<double> tmp(in.size());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int c = 0; c < 3; ++c) {
        double s = 0.0;
        for (int dx = -1; dx <= 1; ++dx) {
          s += k[dx + 1] * in[(static_cast<size_t>(y) * w + clampi(x + dx, w - 1)) * 3 + c];
        }
        tmp[(static_cast<size_t>(y) * w + x) * 3 + c] = s;
      }
    }
  }
  out.pixels.resize(in.size());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int c = 0; c < 3; ++c) {
        double s = 0.0;
        for (int dy = -1; dy <= 1; ++dy) {
          s += k[dy + 1] * tmp[(static_cast<size_t>(clampi(y + dy, h - 1)) * w + x) * 3 + c];
        }
        out.pixels[(static_cast<size_t>(y) * w + x) * 3 + c] = quantize_u8(s);
      }
    }
  }
}

struct AxisMap {
  std::vector<int> lo;
  std::vector<float> frac;
  std::vector<float> omf;  // 1 - frac, hoisted out of the pixel loops
};

AxisMap make_axis_map(int dim, double factor) {
  AxisMap map;
  map.lo.resize(dim);
  map.frac.resize(dim);
  map.omf.resize(dim);
  const double center = (dim - 1) / 2.0;
  for (int i = 0; i < dim; ++i) {
    double s = center + (i - center) / factor;
    s = std::clamp(s, 0.0, static_cast<double>(dim - 1));
    int lo = static_cast<int>(std::floor(s));
    if (lo > dim - 2) lo = dim - 2;
    if (dim == 1) lo = 0;
    map.lo[i] = lo;
    map.frac[i] = static_cast<float>(s - lo);
    map.omf[i] = 1.0f - map.frac[i];
  }
  return map;
}

}  // namespace

BlurVariant blur_variant_from_name(const std::string& name) {
  if (name == "motion_blur") return BlurVariant::kMotion;
  if (name == "defocus_blur") return BlurVariant::kDefocus;
  if (name == "zoom_blur") return BlurVariant::kZoom;
  throw UnknownPerturbation("unknown blur variant: " + name);
}

Frame motion_blur_frame(const Frame& frame, int radius, double sigma) {
  frame.validate();
  if (radius < 0 || sigma <= 0.0) throw InvalidInput("motion blur params");

  std::vector<double> weights(radius + 1);
  double norm = 0.0;
  for (int t = 0; t <= radius; ++t) {
    weights[t] = std::exp(-static_cast<double>(t) * t / (2.0 * sigma * sigma));
    norm += weights[t];
  }
  for (double& wgt : weights) wgt /= norm;

  const int w = frame.width;
  const int h = frame.height;
  Frame out;
  out.width = w;
  out.height = h;
  out.pixels.resize(frame.pixels.size());
  for (int y = 0; y < h; ++y) {
    const uint8_t* row = &frame.pixels[static_cast<size_t>(y) * w * 3];
    uint8_t* orow = &out.pixels[static_cast<size_t>(y) * w * 3];
    for (int x = 0; x < w; ++x) {
      for (int c = 0; c < 3; ++c) {
        double s = 0.0;
        for (int t = 0; t <= radius; ++t) {
          s += weights[t] * row[clampi(x - t, w - 1) * 3 + c];
        }
        orow[x * 3 + c] = quantize_u8(s);
      }
    }
  }
  return out;
}

Frame defocus_blur_frame(const Frame& frame, int radius, double alias_sigma) {
  frame.validate();
  if (radius < 0 || alias_sigma <= 0.0) throw InvalidInput("defocus params");
  std::vector<double> mean;
  disk_mean(frame, radius, mean);
  Frame out;
  out.width = frame.width;
  out.height = frame.height;
  gauss3(mean, frame.width, frame.height, alias_sigma, out);
  return out;
}

std::vector<double> zoom_factors(double max_factor, double step) {
  if (max_factor < 1.0 || step <= 0.0) throw InvalidInput("zoom params");
  const int count = static_cast<int>(std::llround((max_factor - 1.0) / step)) + 1;
  std::vector<double> factors(count);
  for (int i = 0; i < count; ++i) factors[i] = 1.0 + step * i;
  return factors;
}

Frame zoom_blur_frame(const Frame& frame, double max_factor, double step) {
  frame.validate();
  const std::vector<double> factors = zoom_factors(max_factor, step);
  const int w = frame.width;
  const int h = frame.height;
  const size_t plane = static_cast<size_t>(w) * h;

  std::vector<float> src(plane * 3);
  for (size_t i = 0; i < plane; ++i) {
    src[i] = frame.pixels[i * 3];
    src[plane + i] = frame.pixels[i * 3 + 1];
    src[2 * plane + i] = frame.pixels[i * 3 + 2];
  }

  std::vector<float> acc(plane * 3, 0.0f);
  // One zeroed slot past the end keeps rowv[lo + 1] defined when w == 1.
  std::vector<float> rowv(static_cast<size_t>(w) + 1, 0.0f);
  for (double z : factors) {
    if (z == 1.0) {
      // Identity factor: weights are exactly {0, 1}, so the bilinear pass
      // reduces to adding the source plane verbatim.
      for (size_t i = 0; i < acc.size(); ++i) acc[i] += src[i];
      continue;
    }
    const AxisMap mx = make_axis_map(w, z);
    const AxisMap my = make_axis_map(h, z);
    const int* lox = mx.lo.data();
    const float* fxp = mx.frac.data();
    const float* gxp = mx.omf.data();
    for (int c = 0; c < 3; ++c) {
      const float* sp = &src[static_cast<size_t>(c) * plane];
      float* ap = &acc[static_cast<size_t>(c) * plane];
      for (int y = 0; y < h; ++y) {
        const float fy = my.frac[y];
        const float gy = my.omf[y];
        const float* r0 = sp + static_cast<size_t>(my.lo[y]) * w;
        const float* r1 = my.lo[y] + 1 < h ? r0 + w : r0;
        for (int x = 0; x < w; ++x) {
          rowv[x] = r0[x] * gy + r1[x] * fy;
        }
        float* arow = ap + static_cast<size_t>(y) * w;
        for (int x = 0; x < w; ++x) {
          arow[x] += rowv[lox[x]] * gxp[x] + rowv[lox[x] + 1] * fxp[x];
        }
      }
    }
  }

  Frame out;
  out.width = w;
  out.height = h;
  out.pixels.resize(plane * 3);
  const double inv = 1.0 / static_cast<double>(factors.size());
  for (size_t i = 0; i < plane; ++i) {
    out.pixels[i * 3] = quantize_u8(acc[i] * inv);
    out.pixels[i * 3 + 1] = quantize_u8(acc[plane + i] * inv);
    out.pixels[i * 3 + 2] = quantize_u8(acc[2 * plane + i] * inv);
  }
  return out;
}

ClipFrames apply_blur(const ClipFrames& clip, BlurVariant variant,
                      Severity severity) {
  clip.validate();
  severity.validate();
  ClipFrames out;
  out.clip_id = clip.clip_id;
  out.fps = clip.fps;
  out.frames.reserve(clip.frames.size());
  switch (variant) {
    case BlurVariant::kMotion: {
      const SeverityParams p = severity_params("motion_blur", severity);
      const int radius = static_cast<int>(p.at("radius"));
      const double sigma = p.at("sigma");
      if (std::min(clip.width(), clip.height()) < 2 * radius) {
        throw InvalidInput("clip smaller than 2x kernel radius per side");
      }
      for (const Frame& f : clip.frames) {
        out.frames.push_back(motion_blur_frame(f, radius, sigma));
      }
      break;
    }
    case BlurVariant::kDefocus: {
      const SeverityParams p = severity_params("defocus_blur", severity);
      const int radius = static_cast<int>(p.at("radius"));
      const double alias = p.at("alias");
      if (std::min(clip.width(), clip.height()) < 2 * radius) {
        throw InvalidInput("clip smaller than 2x kernel radius per side");
      }
      for (const Frame& f : clip.frames) {
        out.frames.push_back(defocus_blur_frame(f, radius, alias));
      }
      break;
    }
    case BlurVariant::kZoom: {
      const SeverityParams p = severity_params("zoom_blur", severity);
      const double max_factor = p.at("max_factor");
      const double step = p.at("step");
      for (const Frame& f : clip.frames) {
        out.frames.push_back(zoom_blur_frame(f, max_factor, step));
      }
      break;
    }
  }
  return out;
}

}  // namespace perturbkit
