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

#ifndef PERTURBKIT_TEMPORAL_HPP_
#define PERTURBKIT_TEMPORAL_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "perturbkit/frame.hpp"
#include "perturbkit/registry.hpp"
#include "perturbkit/rng.hpp"

namespace perturbkit {

enum class TemporalVariant {
  kSampling,
  kReverseSampling,
  kJumble,
  kBoxJumble,
  kFreeze,
};

// A temporal perturbation is fully described by its frame index mapping:
// output frame i is a copy of input frame source[i].  Plans keep the frame
// count unchanged for every variant.
struct TemporalPlan {
  std::vector<uint32_t> source;

  size_t frame_count() const { return source.size(); }
};

TemporalVariant temporal_variant_from_name(const std::string& name);

// Plans draw from rng only for jumble, box_jumble and freeze; sampling and
// reverse_sampling are pure index arithmetic.
TemporalPlan plan_temporal(size_t frame_count, TemporalVariant variant,
                           Severity severity, RngStream& rng);

// Materializes a plan.  Pixel data is copied byte for byte; fps and clip_id
// are preserved.
ClipFrames apply_temporal(const ClipFrames& clip, const TemporalPlan& plan);

ClipFrames apply_temporal(const ClipFrames& clip, TemporalVariant variant,
                          Severity severity, RngStream& rng);

// Freeze anchors for a clip of n frames at the given anchor fraction: index 0
// plus a uniform draw of the remaining anchors, sorted ascending.  Exposed
// for plan inspection; count is max(1, llround(frac * n)).
std::vector<uint32_t> freeze_anchors(size_t frame_count, double anchor_frac,
                                     RngStream& rng);

}  // namespace perturbkit

#endif  // PERTURBKIT_TEMPORAL_HPP_
