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

#include "perturbkit/registry.hpp"

#include <array>

#include "perturbkit/errors.hpp"

namespace perturbkit {

void Severity::validate() const {
  if (level < 1 || level > 5) {
    throw InvalidInput("severity must be in 1..5, got " +
                       std::to_string(level));
  }
}

namespace {

constexpr PerturbationKind kBuiltin = PerturbationKind::kBuiltin;
constexpr PerturbationKind kPlugin = PerturbationKind::kPlugin;

const std::vector<RegistryEntry> kVideoRegistry = {
    {Modality::kVideo, "Noise", "gaussian", kBuiltin},
    {Modality::kVideo, "Noise", "shot", kBuiltin},
    {Modality::kVideo, "Noise", "impulse", kBuiltin},
    {Modality::kVideo, "Noise", "speckle", kBuiltin},
    {Modality::kVideo, "Blur", "motion_blur", kBuiltin},
    {Modality::kVideo, "Blur", "defocus_blur", kBuiltin},
    {Modality::kVideo, "Blur", "zoom_blur", kBuiltin},
    {Modality::kVideo, "Camera", "static_rotate", kBuiltin},
    {Modality::kVideo, "Camera", "rotate", kBuiltin},
    {Modality::kVideo, "Camera", "translate", kBuiltin},
    {Modality::kVideo, "Digital", "jpeg", kBuiltin},
    {Modality::kVideo, "Digital", "mpeg1", kBuiltin},
    {Modality::kVideo, "Digital", "mpeg2", kBuiltin},
    {Modality::kVideo, "Temporal", "sampling", kBuiltin},
    {Modality::kVideo, "Temporal", "reverse_sampling", kBuiltin},
    {Modality::kVideo, "Temporal", "jumble", kBuiltin},
    {Modality::kVideo, "Temporal", "box_jumble", kBuiltin},
    {Modality::kVideo, "Temporal", "freeze", kBuiltin},
};

const std::vector<RegistryEntry> kTextRegistry = {
    {Modality::kText, "ChangeChar", "Typos", kBuiltin},
    {Modality::kText, "ChangeChar", "Keyboard", kBuiltin},
    {Modality::kText, "ChangeChar", "SpellErr", kBuiltin},
    {Modality::kText, "ChangeChar", "OCR", kBuiltin},
    {Modality::kText, "ChangeChar", "PrefixSwap", kBuiltin},
    {Modality::kText, "ChangeChar", "Punct", kBuiltin},
    {Modality::kText, "AddText", "AppendIrr", kBuiltin},
    {Modality::kText, "AddText", "InsertAdv", kBuiltin},
    {Modality::kText, "Bias", "AllMale", kBuiltin},
    {Modality::kText, "Bias", "AllFemale", kBuiltin},
    {Modality::kText, "Bias", "GenderSwap", kBuiltin},
    {Modality::kText, "Bias", "GenderNeutral", kBuiltin},
    {Modality::kText, "DropText", "NoNN", kBuiltin},
    {Modality::kText, "DropText", "NoVB", kBuiltin},
    {Modality::kText, "DropText", "NoNN&VB", kBuiltin},
    {Modality::kText, "DropText", "NNOnly", kBuiltin},
    {Modality::kText, "DropText", "VBOnly", kBuiltin},
    {Modality::kText, "DropText", "NN&VBOnly", kBuiltin},
    {Modality::kText, "DropText", "RandNN", kBuiltin},
    {Modality::kText, "DropText", "RandVB", kBuiltin},
    {Modality::kText, "Positional", "DropFirst", kBuiltin},
    {Modality::kText, "Positional", "DropLast", kBuiltin},
    {Modality::kText, "Positional", "DropFirstLast", kBuiltin},
    {Modality::kText, "Positional", "ShuffleOrder", kBuiltin},
    {Modality::kText, "SwapText", "SynWordNet", kBuiltin},
    {Modality::kText, "SwapText", "SynWordEmbd", kBuiltin},
    {Modality::kText, "SwapText", "JJSwap", kBuiltin},
    {Modality::kText, "SwapText", "NNSwap", kBuiltin},
    {Modality::kText, "TextStyle", "Tense", kBuiltin},
    {Modality::kText, "TextStyle", "ReverseNeg", kBuiltin},
    {Modality::kText, "TextStyle", "Passive", kBuiltin},
    // Model-backed perturbations run only through the plugin protocol.
    {Modality::kText, "SwapText", "BackTrans", kPlugin},
    {Modality::kText, "SwapText", "MLM", kPlugin},
    {Modality::kText, "TextStyle", "Casual", kPlugin},
    {Modality::kText, "TextStyle", "Formal", kPlugin},
};

struct Schedule {
  const char* name;
  // Parameter names and their five per-severity values.
  std::vector<std::pair<const char*, std::array<double, 5>>> params;
};

const std::vector<Schedule> kSchedules = {
    {"gaussian", {{"sigma", {0.08, 0.12, 0.18, 0.26, 0.38}}}},
    {"speckle", {{"sigma", {0.08, 0.12, 0.18, 0.26, 0.38}}}},
    {"impulse", {{"amount", {0.03, 0.06, 0.09, 0.17, 0.27}}}},
    // Shot follows the same salt-and-pepper amounts by default; the
    // poisson_scale column drives the alternative Poisson mode.
    {"shot",
     {{"amount", {0.03, 0.06, 0.09, 0.17, 0.27}},
      {"poisson_scale", {60, 25, 12, 5, 3}}}},
    {"motion_blur",
     {{"radius", {10, 15, 15, 15, 20}}, {"sigma", {3, 5, 8, 12, 15}}}},
    {"defocus_blur",
     {{"radius", {3, 4, 6, 8, 10}}, {"alias", {0.1, 0.5, 0.5, 0.5, 0.5}}}},
    {"zoom_blur",
     {{"max_factor", {1.11, 1.16, 1.21, 1.26, 1.31}},
      {"step", {0.01, 0.01, 0.01, 0.01, 0.01}}}},
    {"static_rotate", {{"angle_deg", {3, 6, 9, 12, 15}}}},
    {"rotate", {{"max_angle_deg", {3, 6, 9, 12, 15}}}},
    {"translate", {{"offset_frac", {0.02, 0.04, 0.06, 0.08, 0.10}}}},
    {"jpeg", {{"quality", {25, 18, 15, 10, 7}}}},
    {"mpeg1", {{"level", {20, 40, 60, 80, 100}}}},
    {"mpeg2", {{"level", {15, 30, 45, 60, 75}}}},
    {"sampling", {{"stride", {2, 4, 8, 16, 32}}}},
    {"reverse_sampling", {{"stride", {2, 4, 8, 16, 32}}}},
    {"jumble", {{"segment_len", {32, 16, 8, 4, 2}}}},
    {"box_jumble", {{"segment_count", {4, 9, 16, 25, 36}}}},
    {"freeze", {{"anchor_frac", {0.40, 0.20, 0.10, 0.05, 0.025}}}},
};

}  // namespace

const std::vector<RegistryEntry>& video_registry() { return kVideoRegistry; }
const std::vector<RegistryEntry>& text_registry() { return kTextRegistry; }

const RegistryEntry* find_perturbation(Modality modality,
                                       const std::string& name) {
  const auto& reg =
      modality == Modality::kVideo ? kVideoRegistry : kTextRegistry;
  for (const auto& e : reg) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

SeverityParams severity_params(const std::string& name, Severity severity) {
  severity.validate();
  for (const auto& sched : kSchedules) {
    if (name == sched.name) {
      SeverityParams out;
      for (const auto& [pname, values] : sched.params) {
        out[pname] = values[severity.level - 1];
      }
      return out;
    }
  }
  throw UnknownPerturbation("no severity schedule for '" + name + "'");
}

std::string PerturbationSpec::label() const {
  std::string s = category + "/" + name;
  if (severity) s += ":" + std::to_string(severity->level);
  return s;
}

std::string PerturbationSpec::dir_name() const {
  std::string s = modality == Modality::kVideo ? "video__" : "text__";
  s += category + "__" + name;
  if (severity) s += "__s" + std::to_string(severity->level);
  return s;
}

void PerturbationSpec::validate() const {
  if (modality == Modality::kVideo) {
    if (!severity) throw InvalidInput("video spec requires a severity: " + name);
    severity->validate();
  } else if (severity) {
    throw InvalidInput("text spec must not carry a severity: " + name);
  }
  const RegistryEntry* e = find_perturbation(modality, name);
  if (!e || e->category != category) {
    throw UnknownPerturbation("not a registered perturbation: " + category +
                              "/" + name);
  }
}

PerturbationSpec parse_spec_label(const std::string& label) {
  const size_t slash = label.find('/');
  if (slash == std::string::npos || slash == 0) {
    throw InvalidInput("spec label must be category/name[:severity]: " + label);
  }
  PerturbationSpec spec;
  spec.category = label.substr(0, slash);
  std::string rest = label.substr(slash + 1);
  const size_t colon = rest.find(':');
  if (colon != std::string::npos) {
    spec.name = rest.substr(0, colon);
    try {
      spec.severity = Severity{std::stoi(rest.substr(colon + 1))};
    } catch (const std::exception&) {
      throw InvalidInput("bad severity in spec label: " + label);
    }
  } else {
    spec.name = rest;
  }
  const RegistryEntry* v = find_perturbation(Modality::kVideo, spec.name);
  const RegistryEntry* t = find_perturbation(Modality::kText, spec.name);
  if (v && v->category == spec.category) {
    spec.modality = Modality::kVideo;
  } else if (t && t->category == spec.category) {
    spec.modality = Modality::kText;
  } else {
    throw UnknownPerturbation("not a registered perturbation: " + label);
  }
  if (spec.modality == Modality::kText && spec.severity) {
    throw InvalidInput("text perturbations carry no severity: " + label);
  }
  return spec;
}

std::vector<PerturbationSpec> parse_spec_arg(const std::string& arg) {
  PerturbationSpec base = parse_spec_label(arg);
  if (base.modality == Modality::kText || base.severity) {
    base.validate();
    return {base};
  }
  // Video spec without a severity expands to all five.
  std::vector<PerturbationSpec> out;
  for (int s = 1; s <= 5; ++s) {
    PerturbationSpec spec = base;
    spec.severity = Severity{s};
    spec.validate();
    out.push_back(spec);
  }
  return out;
}

}  // namespace perturbkit
