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

#ifndef PERTURBKIT_FRAME_HPP_
#define PERTURBKIT_FRAME_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace perturbkit {

// Positive rational, used for frame rates (e.g. 30000/1001).
struct Rational {
  int64_t num = 0;
  int64_t den = 1;

  double value() const { return static_cast<double>(num) / den; }
  bool positive() const { return num > 0 && den > 0; }
  bool operator==(const Rational&) const = default;
};

// One decoded RGB frame, row-major, 8 bits per channel, 3 channels.
struct Frame {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> pixels;  // size == width * height * 3

  static Frame solid(int w, int h, uint8_t r, uint8_t g, uint8_t b);

  size_t size_bytes() const { return pixels.size(); }

  uint8_t& at(int x, int y, int c) {
    return pixels[(static_cast<size_t>(y) * width + x) * 3 + c];
  }
  uint8_t at(int x, int y, int c) const {
    return pixels[(static_cast<size_t>(y) * width + x) * 3 + c];
  }

  bool same_geometry(const Frame& o) const {
    return width == o.width && height == o.height;
  }
  bool operator==(const Frame&) const = default;

  // Throws InvalidInput unless buffer length == width*height*3 and the
  // dimensions are positive.
  void validate() const;
};

// An ordered sequence of frames with identical geometry plus identity.
struct ClipFrames {
  std::string clip_id;
  std::vector<Frame> frames;
  Rational fps{30, 1};

  int width() const { return frames.empty() ? 0 : frames.front().width; }
  int height() const { return frames.empty() ? 0 : frames.front().height; }
  size_t frame_count() const { return frames.size(); }

  // Throws InvalidInput on empty clips, mismatched geometry or bad fps.
  void validate() const;
};

// Round half away from zero, clamp to [0,255]. The one sanctioned path from
// double-precision pixel math back to u8; keeps outputs byte-identical
// across runs.
inline uint8_t quantize_u8(double v) {
  if (v <= 0.0) return 0;
  if (v >= 255.0) return 255;
  return static_cast<uint8_t>(v + 0.5);
}

}  // namespace perturbkit

#endif  // PERTURBKIT_FRAME_HPP_
