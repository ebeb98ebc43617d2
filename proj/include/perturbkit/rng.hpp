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

#ifndef PERTURBKIT_RNG_HPP_
#define PERTURBKIT_RNG_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace perturbkit {

// Stable 64-bit FNV-1a over a byte string. Used for seed derivation and
// lexicon version hashes; must never change once datasets are published.
uint64_t fnv1a64(const void* data, size_t len);
uint64_t fnv1a64(const std::string& s);

// Per-item seed: FNV-1a of "global_seed|clip_id|name|severity" (decimal
// integers, UTF-8). severity_level is 0 for severity-free perturbations.
// Pure, platform independent.
uint64_t derive_seed(uint64_t global_seed, const std::string& clip_id,
                     const std::string& perturbation_name, int severity_level);

// Deterministic pseudorandom stream (xoshiro256++ seeded via splitmix64).
// Identical seed => identical sequence on every platform. Instances are
// single-owner; never share one across threads.
class RngStream {
 public:
  explicit RngStream(uint64_t seed);

  uint64_t next_u64();

  // Uniform double in [0, 1), 53 random bits.
  double uniform();

  // Uniform double in [lo, hi).
  double uniform(double lo, double hi);

  // Uniform integer in [0, n). n must be > 0. Debiased by rejection.
  uint64_t uniform_below(uint64_t n);

  // Uniform integer in [lo, hi] inclusive.
  int64_t uniform_int(int64_t lo, int64_t hi);

  // N(0, sigma) via the Marsaglia polar method (no sin/cos).
  double normal(double sigma = 1.0);

  // Poisson(lambda). Knuth multiplication for small lambda, Hormann's
  // transformed rejection (PTRD) for large.
  uint64_t poisson(double lambda);

  // In-place Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(uniform_below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  uint64_t state_[4];
  double spare_normal_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace perturbkit

#endif  // PERTURBKIT_RNG_HPP_
