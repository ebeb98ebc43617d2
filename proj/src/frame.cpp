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

#include "perturbkit/frame.hpp"

#include "perturbkit/errors.hpp"

namespace perturbkit {

Frame Frame::solid(int w, int h, uint8_t r, uint8_t g, uint8_t b) {
  Frame f;
  f.width = w;
  f.height = h;
  f.pixels.resize(static_cast<size_t>(w) * h * 3);
  for (size_t i = 0; i < f.pixels.size(); i += 3) {
    f.pixels[i] = r;
    f.pixels[i + 1] = g;
    f.pixels[i + 2] = b;
  }
  return f;
}

void Frame::validate() const {
  if (width <= 0 || height <= 0) {
    throw InvalidInput("frame dimensions must be positive");
  }
  if (pixels.size() != static_cast<size_t>(width) * height * 3) {
    throw InvalidInput("frame buffer length != width*height*3");
  }
}

void ClipFrames::validate() const {
  if (frames.empty()) throw InvalidInput("clip has no frames: " + clip_id);
  if (!fps.positive()) throw InvalidInput("clip fps must be positive");
  const Frame& first = frames.front();
  for (const Frame& f : frames) {
    f.validate();
    if (!f.same_geometry(first)) {
      throw InvalidInput("clip frames have mixed geometry: " + clip_id);
    }
  }
}

}  // namespace perturbkit
