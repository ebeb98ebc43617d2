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

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "doctest.h"
#include "perturbkit/rng.hpp"

using namespace perturbkit;

TEST_SUITE("rng") {

TEST_CASE("fnv1a64 matches frozen reference values") {
  // Classic FNV-1a test vectors plus the exact seed-derivation strings.
  CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ull);
  CHECK(fnv1a64("7|c2|jumble|1") == 0x5a01004b701622bfull);
  CHECK(fnv1a64("0|c1|gaussian|3") == 0xd2ac495c5cc9bb41ull);
  CHECK(fnv1a64("0|c1|gaussian|4") == 0xd2ac4a5c5cc9bcf4ull);
}

TEST_CASE("derive_seed hashes the pipe-joined identity") {
  CHECK(derive_seed(7, "c2", "jumble", 1) == fnv1a64("7|c2|jumble|1"));
  CHECK(derive_seed(0, "c1", "gaussian", 3) == 0xd2ac495c5cc9bb41ull);
  // Severity flips the seed.
  CHECK(derive_seed(0, "c1", "gaussian", 3) != derive_seed(0, "c1", "gaussian", 4));
  // Severity-free perturbations use level 0.
  CHECK(derive_seed(5, "x", "NoNN", 0) == fnv1a64("5|x|NoNN|0"));
}

TEST_CASE("identical seeds give identical streams") {
  RngStream a(123456789), b(123456789);
  for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("different seeds diverge") {
  RngStream a(1), b(2);
  int same = 0;
  for (int i = 0; i < 100; ++i) same += a.next_u64() == b.next_u64();
  CHECK(same == 0);
}

TEST_CASE("uniform stays in [0,1) and fills the range") {
  RngStream rng(42);
  double lo = 1.0, hi = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  CHECK(lo < 0.01);
  CHECK(hi > 0.99);
}

TEST_CASE("uniform_below covers every residue without bias artifacts") {
  RngStream rng(7);
  std::map<uint64_t, int> counts;
  for (int i = 0; i < 7000; ++i) counts[rng.uniform_below(7)]++;
  CHECK(counts.size() == 7);
  for (const auto& [value, count] : counts) {
    CHECK(value < 7);
    CHECK(count > 800);  // expectation 1000
    CHECK(count < 1200);
  }
}

TEST_CASE("uniform_int is inclusive of both bounds") {
  RngStream rng(9);
  std::set<int64_t> seen;
  for (int i = 0; i < 200; ++i) seen.insert(rng.uniform_int(-2, 2));
  CHECK(seen == std::set<int64_t>{-2, -1, 0, 1, 2});
}

TEST_CASE("normal moments approach (0, sigma)") {
  RngStream rng(11);
  const int n = 50000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = rng.normal(0.26);
    sum += x;
    sq += x * x;
  }
  const double mean = sum / n;
  const double var = sq / n - mean * mean;
  CHECK(std::abs(mean) < 0.005);
  CHECK(std::abs(std::sqrt(var) - 0.26) < 0.01);
}

TEST_CASE("poisson mean tracks lambda in both regimes") {
  RngStream rng(13);
  for (const double lambda : {0.5, 4.0, 60.0}) {
    const int n = 20000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += static_cast<double>(rng.poisson(lambda));
    CHECK(std::abs(sum / n - lambda) < 0.05 * lambda + 0.05);
  }
}

TEST_CASE("shuffle is a permutation and seed-stable") {
  std::vector<int> v{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  RngStream a(77);
  a.shuffle(v);
  std::vector<int> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9});

  std::vector<int> w{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  RngStream b(77);
  b.shuffle(w);
  CHECK(v == w);
}

}  // TEST_SUITE
