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

#ifndef PERTURBKIT_PLUGIN_HPP_
#define PERTURBKIT_PLUGIN_HPP_

#include <string>
#include <vector>

#include "perturbkit/caption.hpp"

namespace perturbkit {

// Runs a model-backed text perturber as a subprocess.  Wire protocol:
// line-delimited JSON over stdin/stdout, UTF-8, one {"id", "text"} object
// per caption; EOF terminates.  Output lines may arrive in any order; the
// result is re-aligned to the input order by id.  Process failure, a
// malformed line, an unknown or missing id are all fatal and reported with
// the offending line number.
std::vector<Caption> run_plugin(const std::vector<Caption>& captions,
                                const std::string& command);

}  // namespace perturbkit

#endif  // PERTURBKIT_PLUGIN_HPP_
