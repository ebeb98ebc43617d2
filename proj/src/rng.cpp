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

#include "perturbkit/rng.hpp"

#include <cmath>
#include <cstring>

namespace perturbkit {

uint64_t fnv1a64(const void* data, size_t len) {
  const auto* p = static_cast<const unsigned char*>(data);
  uint64_t h = 0xcbf29ce484222325ULL;
  for (size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

uint64_t fnv1a64(const std::string& s) { return fnv1a64(s.data(), s.size()); }

uint64_t derive_seed(uint64_t global_seed, const std::string& clip_id,
                     const std::string& perturbation_name,
                     int severity_level) {
  std::string key = std::to_string(global_seed);
  key += '|';
  key += clip_id;
  key += '|';
  key += perturbation_name;
  key += '|';
  key += std::to_string(severity_level);
  return fnv1a64(key);
}

namespace {

inline uint64_t splitmix64(uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

RngStream::RngStream(uint64_t seed) {
  uint64_t sm = seed;
  for (auto& s : state_) s = splitmix64(sm);
}

uint64_t RngStream::next_u64() {
  const uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
  const uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double RngStream::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

uint64_t RngStream::uniform_below(uint64_t n) {
  // Rejection from the top so every residue is equally likely.
  const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  uint64_t x;
  do {
    x = next_u64();
  } while (x >= limit);
  return x % n;
}

int64_t RngStream::uniform_int(int64_t lo, int64_t hi) {
  return lo + static_cast<int64_t>(
                  uniform_below(static_cast<uint64_t>(hi - lo) + 1));
}

double RngStream::normal(double sigma) {
  if (have_spare_) {
    have_spare_ = false;
    return spare_normal_ * sigma;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double m = std::sqrt(-2.0 * std::log(s) / s);
  spare_normal_ = v * m;
  have_spare_ = true;
  return u * m * sigma;
}

uint64_t RngStream::poisson(double lambda) {
  if (lambda <= 0.0) return 0;
  if (lambda < 10.0) {
    // Knuth: multiply uniforms until the product drops below exp(-lambda).
    const double threshold = std::exp(-lambda);
    uint64_t k = 0;
    double p = 1.0;
    do {
      ++k;
      p *= uniform();
    } while (p > threshold);
    return k - 1;
  }
  // Hormann (1993) PTRD, valid for lambda >= 10.
  const double smu = std::sqrt(lambda);
  const double b = 0.931 + 2.53 * smu;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  while (true) {
    double u;
    double v = uniform();
    if (v <= 0.86 * v_r) {
      u = v / v_r - 0.43;
      return static_cast<uint64_t>(
          std::floor((2.0 * a / (0.5 - std::fabs(u)) + b) * u + lambda + 0.445));
    }
    if (v >= v_r) {
      u = uniform() - 0.5;
    } else {
      u = v / v_r - 0.93;
      u = (u < 0 ? -0.5 : 0.5) - u;
      v = uniform() * v_r;
    }
    const double us = 0.5 - std::fabs(u);
    if (us < 0.013 && v > us) continue;
    const double k =
        std::floor((2.0 * a / us + b) * u + lambda + 0.445);
    v = v * inv_alpha / (a / (us * us) + b);
    if (k >= 10.0) {
      // Stirling-corrected acceptance test.
      const double log_sqrt_2pi = 0.91893853320467267;
      if (std::log(v * smu) <=
          (k + 0.5) * std::log(lambda / k) - lambda -
              log_sqrt_2pi + k -
              (1.0 / 12.0 - 1.0 / (360.0 * k * k)) / k) {
        return static_cast<uint64_t>(k);
      }
    } else if (k >= 0.0) {
      // Exact: log k! via lgamma.
      if (std::log(v) <= k * std::log(lambda) - lambda - std::lgamma(k + 1.0)) {
        return static_cast<uint64_t>(k);
      }
    }
  }
}

}  // namespace perturbkit
