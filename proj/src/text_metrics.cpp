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
#include <cctype>
#include <cmath>
#include <map>

#include "perturbkit/errors.hpp"
#include "perturbkit/metrics.hpp"

namespace perturbkit {
namespace {

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::map<std::vector<std::string>, size_t> ngram_counts(
    const std::vector<std::string>& tokens, size_t n) {
  std::map<std::vector<std::string>, size_t> counts;
  if (tokens.size() < n) return counts;
  for (size_t i = 0; i + n <= tokens.size(); ++i) {
    counts[{tokens.begin() + i, tokens.begin() + i + n}]++;
  }
  return counts;
}

double bleu4(const std::vector<std::string>& cand,
             const std::vector<std::string>& ref) {
  if (cand.empty()) return 0.0;
  const size_t max_order = std::min<size_t>(4, std::min(cand.size(), ref.size()));
  double log_sum = 0.0;
  for (size_t n = 1; n <= max_order; ++n) {
    const auto cand_counts = ngram_counts(cand, n);
    const auto ref_counts = ngram_counts(ref, n);
    size_t total = 0;
    size_t clipped = 0;
    for (const auto& [gram, count] : cand_counts) {
      total += count;
      const auto it = ref_counts.find(gram);
      if (it != ref_counts.end()) clipped += std::min(count, it->second);
    }
    if (clipped == 0) return 0.0;
    log_sum += std::log(static_cast<double>(clipped) / total);
  }
  const double c = static_cast<double>(cand.size());
  const double r = static_cast<double>(ref.size());
  const double brevity = c >= r ? 1.0 : std::exp(1.0 - r / c);
  return brevity * std::exp(log_sum / static_cast<double>(max_order));
}

size_t lcs_length(const std::vector<std::string>& a,
                  const std::vector<std::string>& b) {
  std::vector<size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (size_t i = 1; i <= a.size(); ++i) {
    for (size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1
                                    : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

double rouge_l_f1(const std::vector<std::string>& cand,
                  const std::vector<std::string>& ref) {
  if (cand.empty()) return 0.0;
  const double lcs = static_cast<double>(lcs_length(cand, ref));
  if (lcs == 0.0) return 0.0;
  const double p = lcs / static_cast<double>(cand.size());
  const double r = lcs / static_cast<double>(ref.size());
  return 2.0 * p * r / (p + r);
}

double meteor_lite(const std::vector<std::string>& cand,
                   const std::vector<std::string>& ref) {
  if (cand.empty()) return 0.0;
  std::vector<bool> cand_used(cand.size(), false);
  std::vector<bool> ref_used(ref.size(), false);
  size_t matches = 0;
  // Exact pass, then stem pass; one-to-one, earliest unmatched reference
  // token wins so the alignment is deterministic.
  for (int pass = 0; pass < 2; ++pass) {
    for (size_t i = 0; i < cand.size(); ++i) {
      if (cand_used[i]) continue;
      for (size_t j = 0; j < ref.size(); ++j) {
        if (ref_used[j]) continue;
        const bool match = pass == 0
                               ? cand[i] == ref[j]
                               : light_stem(cand[i]) == light_stem(ref[j]);
        if (match) {
          cand_used[i] = true;
          ref_used[j] = true;
          ++matches;
          break;
        }
      }
    }
  }
  if (matches == 0) return 0.0;
  const double p = static_cast<double>(matches) / cand.size();
  const double r = static_cast<double>(matches) / ref.size();
  return p * r / (0.9 * p + 0.1 * r);
}

}  // namespace

std::string light_stem(const std::string& word) {
  std::string s;
  s.reserve(word.size());
  for (char ch : word) {
    s.push_back(static_cast<char>(
        std::tolower(static_cast<unsigned char>(ch))));
  }
  if (s.size() > 5 && ends_with(s, "ing")) {
    s.resize(s.size() - 3);
  } else if (s.size() > 4 && ends_with(s, "ed")) {
    s.resize(s.size() - 2);
  } else if (s.size() > 4 && ends_with(s, "es")) {
    s.resize(s.size() - 2);
  } else if (s.size() > 3 && ends_with(s, "s") && !ends_with(s, "ss")) {
    s.resize(s.size() - 1);
  }
  return s;
}

TextSimilarity text_similarity(const Caption& candidate,
                               const Caption& reference) {
  if (reference.tokens.empty()) throw InvalidInput("empty reference caption");
  TextSimilarity result;
  result.bleu4 = bleu4(candidate.tokens, reference.tokens);
  result.rouge_l_f1 = rouge_l_f1(candidate.tokens, reference.tokens);
  result.meteor_lite = meteor_lite(candidate.tokens, reference.tokens);
  return result;
}

}  // namespace perturbkit
