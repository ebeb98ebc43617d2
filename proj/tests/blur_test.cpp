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

#include <cmath>
#include <numeric>

#include "doctest.h"
#include "perturbkit/blur.hpp"
#include "perturbkit/errors.hpp"
#include "test_util.hpp"

using namespace perturbkit;
using testutil::random_clip;

namespace {

double pixel_sum(const Frame& frame) {
  return std::accumulate(frame.pixels.begin(), frame.pixels.end(), 0.0);
}

}  // namespace

TEST_SUITE("blur") {

TEST_CASE("constant frames are fixed points of all three blurs") {
  ClipFrames clip;
  clip.clip_id = "flat";
  clip.frames.push_back(Frame::solid(48, 48, 90, 160, 220));
  for (const BlurVariant variant :
       {BlurVariant::kMotion, BlurVariant::kDefocus, BlurVariant::kZoom}) {
    const ClipFrames out = apply_blur(clip, variant, Severity{1});
    CHECK(out.frames[0] == clip.frames[0]);
  }
}

TEST_CASE("motion blur spreads an impulse along the one-sided line") {
  // Single white pixel; taps reach x-t for t in 0..radius.
  Frame frame = Frame::solid(64, 64, 0, 0, 0);
  frame.at(40, 32, 0) = 255;
  frame.at(40, 32, 1) = 255;
  frame.at(40, 32, 2) = 255;

  const Frame out = motion_blur_frame(frame, 15, 8);
  // Mass moved only to the right of the source (x in [40, 40+15]).
  for (int x = 0; x < 64; ++x) {
    for (int y = 0; y < 64; ++y) {
      if (out.at(x, y, 0) > 0) {
        CHECK(y == 32);
        CHECK(x >= 40);
        CHECK(x <= 55);
      }
    }
  }
  // Energy conserved within rounding (+-0.5%).
  const double in_sum = pixel_sum(frame);
  const double out_sum = pixel_sum(out);
  CHECK(std::abs(out_sum - in_sum) <= 0.005 * in_sum);
}

TEST_CASE("motion blur against a dense convolution oracle") {
  const ClipFrames clip = random_clip(21, 1, 40, 24);
  const Frame& in = clip.frames[0];
  const int radius = 10;
  const double sigma = 3.0;
  const Frame out = motion_blur_frame(in, radius, sigma);

  std::vector<double> w(radius + 1);
  double norm = 0.0;
  for (int t = 0; t <= radius; ++t) {
    w[t] = std::exp(-0.5 * t * t / (sigma * sigma));
    norm += w[t];
  }
  for (int y = 0; y < in.height; ++y) {
    for (int x = 0; x < in.width; ++x) {
      for (int c = 0; c < 3; ++c) {
        double acc = 0.0;
        for (int t = 0; t <= radius; ++t) {
          const int sx = std::max(0, x - t);
          acc += w[t] * in.at(sx, y, c);
        }
        CHECK(out.at(x, y, c) == quantize_u8(acc / norm));
      }
    }
  }
}

TEST_CASE("defocus blur against a dense disk-mean oracle") {
  const ClipFrames clip = random_clip(22, 1, 30, 30);
  const Frame& in = clip.frames[0];
  const int radius = 3;
  const double alias = 0.1;
  const Frame out = defocus_blur_frame(in, radius, alias);

  // Stage 1: disk mean with edge replication, integer accumulation.
  std::vector<std::pair<int, int>> disk;
  for (int dy = -radius; dy <= radius; ++dy) {
    for (int dx = -radius; dx <= radius; ++dx) {
      if (dx * dx + dy * dy <= radius * radius) disk.push_back({dx, dy});
    }
  }
  auto clampi = [](int v, int hi) { return v < 0 ? 0 : (v > hi ? hi : v); };
  std::vector<double> stage1(in.pixels.size());
  for (int y = 0; y < in.height; ++y) {
    for (int x = 0; x < in.width; ++x) {
      for (int c = 0; c < 3; ++c) {
        uint32_t acc = 0;
        for (const auto& [dx, dy] : disk) {
          acc += in.at(clampi(x + dx, in.width - 1),
                       clampi(y + dy, in.height - 1), c);
        }
        stage1[(static_cast<size_t>(y) * in.width + x) * 3 + c] =
            static_cast<double>(acc) / static_cast<double>(disk.size());
      }
    }
  }
  // Stage 2: normalized 3x3 Gaussian with the alias sigma.
  double k[3];
  k[0] = std::exp(-0.5 / (alias * alias));
  k[1] = 1.0;
  k[2] = k[0];
  const double ksum = k[0] + k[1] + k[2];
  auto s1 = [&](int x, int y, int c) {
    x = clampi(x, in.width - 1);
    y = clampi(y, in.height - 1);
    return stage1[(static_cast<size_t>(y) * in.width + x) * 3 + c];
  };
  for (int y = 0; y < in.height; ++y) {
    for (int x = 0; x < in.width; ++x) {
      for (int c = 0; c < 3; ++c) {
        double acc = 0.0;
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            acc += k[dx + 1] * k[dy + 1] * s1(x + dx, y + dy, c);
          }
        }
        acc /= ksum * ksum;
        CHECK(out.at(x, y, c) == quantize_u8(acc));
      }
    }
  }
}

TEST_CASE("zoom factor ladder matches the schedule") {
  const std::vector<double> f = zoom_factors(1.11, 0.01);
  REQUIRE(f.size() == 12);
  CHECK(f.front() == 1.0);
  CHECK(f.back() == doctest::Approx(1.11).epsilon(1e-9));
  CHECK(zoom_factors(1.31, 0.01).size() == 32);
}

TEST_CASE("zoom blur keeps the center pixel bright on a centered dot") {
  Frame frame = Frame::solid(41, 41, 0, 0, 0);
  for (int dy = -1; dy <= 1; ++dy) {
    for (int dx = -1; dx <= 1; ++dx) {
      frame.at(20 + dx, 20 + dy, 1) = 255;
    }
  }
  const Frame out = zoom_blur_frame(frame, 1.31, 0.01);
  // The dot stays centered (zoom is center-anchored) and the fringe smears.
  CHECK(out.at(20, 20, 1) > 200);
  CHECK(out.at(0, 0, 1) == 0);
}

TEST_CASE("blur is deterministic without any rng") {
  const ClipFrames clip = random_clip(23, 2, 44, 44);
  for (const BlurVariant variant :
       {BlurVariant::kMotion, BlurVariant::kDefocus, BlurVariant::kZoom}) {
    const ClipFrames a = apply_blur(clip, variant, Severity{4});
    const ClipFrames b = apply_blur(clip, variant, Severity{4});
    CHECK(a.frames == b.frames);
  }
}

TEST_CASE("frames below twice the kernel radius are rejected") {
  const ClipFrames small = random_clip(24, 1, 24, 24);
  // motion severity 5 has radius 20; 24 < 40.
  CHECK_THROWS_AS(apply_blur(small, BlurVariant::kMotion, Severity{5}),
                  InvalidInput);
  // defocus severity 5 has radius 10; 24 >= 20 passes.
  CHECK_NOTHROW(apply_blur(small, BlurVariant::kDefocus, Severity{5}));
  const ClipFrames tiny = random_clip(25, 1, 12, 12);
  CHECK_THROWS_AS(apply_blur(tiny, BlurVariant::kDefocus, Severity{5}),
                  InvalidInput);
}

TEST_CASE("geometry and fps preserved") {
  ClipFrames clip = random_clip(26, 3, 46, 50);
  clip.fps = Rational{24, 1};
  const ClipFrames out = apply_blur(clip, BlurVariant::kZoom, Severity{2});
  CHECK(out.width() == 46);
  CHECK(out.height() == 50);
  CHECK(out.frame_count() == 3);
  CHECK(out.fps == clip.fps);
}

}  // TEST_SUITE
