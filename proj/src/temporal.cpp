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

#include "perturbkit/temporal.hpp"

#include <algorithm>
#include <cmath>

#include "perturbkit/errors.hpp"

namespace perturbkit {
namespace {

TemporalPlan plan_sampling(size_t n, size_t stride) {
  TemporalPlan plan;
  plan.source.resize(n);
  for (size_t i = 0; i < n; ++i) {
    plan.source[i] = static_cast<uint32_t>(i / stride * stride);
  }
  return plan;
}

TemporalPlan plan_jumble(size_t n, size_t segment_len, RngStream& rng) {
  TemporalPlan plan;
  plan.source.resize(n);
  for (size_t start = 0; start < n; start += segment_len) {
    const size_t end = std::min(start + segment_len, n);
    std::vector<uint32_t> segment;
    segment.reserve(end - start);
    for (size_t i = start; i < end; ++i) {
      segment.push_back(static_cast<uint32_t>(i));
    }
    rng.shuffle(segment);
    std::copy(segment.begin(), segment.end(), plan.source.begin() + start);
  }
  return plan;
}

TemporalPlan plan_box_jumble(size_t n, size_t segment_count, RngStream& rng) {
  // Near-equal split: segment j covers [floor(j*n/s), floor((j+1)*n/s)).
  // Empty segments (n < s) are dropped before the order shuffle.
  std::vector<std::pair<size_t, size_t>> segments;
  for (size_t j = 0; j < segment_count; ++j) {
    const size_t begin = j * n / segment_count;
    const size_t end = (j + 1) * n / segment_count;
    if (begin < end) segments.emplace_back(begin, end);
  }
  std::vector<uint32_t> order(segments.size());
  for (size_t j = 0; j < order.size(); ++j) order[j] = static_cast<uint32_t>(j);
  rng.shuffle(order);

  TemporalPlan plan;
  plan.source.reserve(n);
  for (uint32_t j : order) {
    for (size_t i = segments[j].first; i < segments[j].second; ++i) {
      plan.source.push_back(static_cast<uint32_t>(i));
    }
  }
  return plan;
}

TemporalPlan plan_freeze(size_t n, double anchor_frac, RngStream& rng) {
  const std::vector<uint32_t> anchors = freeze_anchors(n, anchor_frac, rng);
  TemporalPlan plan;
  plan.source.resize(n);
  size_t a = 0;
  for (size_t i = 0; i < n; ++i) {
    while (a + 1 < anchors.size() && anchors[a + 1] <= i) ++a;
    plan.source[i] = anchors[a];
  }
  return plan;
}

}  // namespace

TemporalVariant temporal_variant_from_name(const std::string& name) {
  if (name == "sampling") return TemporalVariant::kSampling;
  if (name == "reverse_sampling") return TemporalVariant::kReverseSampling;
  if (name == "jumble") return TemporalVariant::kJumble;
  if (name == "box_jumble") return TemporalVariant::kBoxJumble;
  if (name == "freeze") return TemporalVariant::kFreeze;
  throw UnknownPerturbation("unknown temporal variant: " + name);
}

std::vector<uint32_t> freeze_anchors(size_t frame_count, double anchor_frac,
                                     RngStream& rng) {
  if (frame_count == 0) throw InvalidInput("freeze_anchors: empty clip");
  const size_t want = static_cast<size_t>(std::max<long long>(
      1, std::llround(anchor_frac * static_cast<double>(frame_count))));
  const size_t count = std::min(want, frame_count);

  // Partial Fisher-Yates over [1, n) picks the non-zero anchors without
  // replacement; index 0 is always an anchor.
  std::vector<uint32_t> rest(frame_count - 1);
  for (size_t i = 0; i < rest.size(); ++i) {
    rest[i] = static_cast<uint32_t>(i + 1);
  }
  std::vector<uint32_t> anchors;
  anchors.reserve(count);
  anchors.push_back(0);
  for (size_t i = 0; i + 1 < count; ++i) {
    const size_t j = i + static_cast<size_t>(rng.uniform_below(
                             static_cast<uint64_t>(rest.size() - i)));
    std::swap(rest[i], rest[j]);
    anchors.push_back(rest[i]);
  }
  std::sort(anchors.begin(), anchors.end());
  return anchors;
}

TemporalPlan plan_temporal(size_t frame_count, TemporalVariant variant,
                           Severity severity, RngStream& rng) {
  if (frame_count == 0) throw InvalidInput("plan_temporal: empty clip");
  severity.validate();
  switch (variant) {
    case TemporalVariant::kSampling: {
      const size_t stride = static_cast<size_t>(
          severity_params("sampling", severity).at("stride"));
      return plan_sampling(frame_count, stride);
    }
    case TemporalVariant::kReverseSampling: {
      const size_t stride = static_cast<size_t>(
          severity_params("reverse_sampling", severity).at("stride"));
      TemporalPlan plan = plan_sampling(frame_count, stride);
      std::reverse(plan.source.begin(), plan.source.end());
      return plan;
    }
    case TemporalVariant::kJumble: {
      const size_t len = static_cast<size_t>(
          severity_params("jumble", severity).at("segment_len"));
      return plan_jumble(frame_count, len, rng);
    }
    case TemporalVariant::kBoxJumble: {
      const size_t count = static_cast<size_t>(
          severity_params("box_jumble", severity).at("segment_count"));
      return plan_box_jumble(frame_count, count, rng);
    }
    case TemporalVariant::kFreeze: {
      const double frac =
          severity_params("freeze", severity).at("anchor_frac");
      return plan_freeze(frame_count, frac, rng);
    }
  }
  throw InvalidInput("plan_temporal: bad variant");
}

ClipFrames apply_temporal(const ClipFrames& clip, const TemporalPlan& plan) {
  clip.validate();
  if (plan.frame_count() != clip.frame_count()) {
    throw InvalidInput("temporal plan length does not match clip");
  }
  ClipFrames out;
  out.clip_id = clip.clip_id;
  out.fps = clip.fps;
  out.frames.reserve(plan.source.size());
  for (uint32_t src : plan.source) {
    if (src >= clip.frames.size()) {
      throw InvalidInput("temporal plan index out of range");
    }
    out.frames.push_back(clip.frames[src]);
  }
  return out;
}

ClipFrames apply_temporal(const ClipFrames& clip, TemporalVariant variant,
                          Severity severity, RngStream& rng) {
  clip.validate();
  const TemporalPlan plan =
      plan_temporal(clip.frame_count(), variant, severity, rng);
  return apply_temporal(clip, plan);
}

}  // namespace perturbkit
