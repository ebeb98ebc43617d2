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

#ifndef PERTURBKIT_REGISTRY_HPP_
#define PERTURBKIT_REGISTRY_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace perturbkit {

enum class Modality { kVideo, kText };

// Severity index 1..5 (visual perturbations only).
struct Severity {
  int level = 1;

  void validate() const;  // throws InvalidInput outside 1..5
  bool operator==(const Severity&) const = default;
};

// Named per-severity parameters, e.g. {"sigma": 0.18} or
// {"radius": 20, "sigma": 15}.
using SeverityParams = std::map<std::string, double>;

enum class PerturbationKind {
  kBuiltin,  // implemented here, deterministic given (input, seed, lexicon)
  kPlugin,   // model-based; runs only through the external perturber protocol
};

struct RegistryEntry {
  Modality modality;
  std::string category;  // video: Noise|Blur|Camera|Digital|Temporal
                         // text: ChangeChar|AddText|Bias|DropText|Positional|
                         //       SwapText|TextStyle
  std::string name;
  PerturbationKind kind = PerturbationKind::kBuiltin;
};

// Fixed at build time; no runtime mutation.
const std::vector<RegistryEntry>& video_registry();
const std::vector<RegistryEntry>& text_registry();

const RegistryEntry* find_perturbation(Modality modality,
                                       const std::string& name);

// Exact per-severity parameters for a registered video perturbation.
// Throws UnknownPerturbation / InvalidInput.
SeverityParams severity_params(const std::string& name, Severity severity);

// Fully determines one transformation.
struct PerturbationSpec {
  Modality modality = Modality::kVideo;
  std::string category;
  std::string name;
  std::optional<Severity> severity;  // present iff modality == kVideo
  uint64_t seed = 0;

  // "Noise/gaussian:3" or "DropText/NoNN".
  std::string label() const;
  // Filesystem-safe variant: "video__Noise__gaussian__s3".
  std::string dir_name() const;

  void validate() const;  // registry membership + severity presence rule
};

// Parses "category/name[:severity]". Severity is required for video unless
// expand_all_severities collects 1..5.
PerturbationSpec parse_spec_label(const std::string& label);
std::vector<PerturbationSpec> parse_spec_arg(const std::string& arg);

}  // namespace perturbkit

#endif  // PERTURBKIT_REGISTRY_HPP_
