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

#ifndef PERTURBKIT_SUBPROCESS_HPP_
#define PERTURBKIT_SUBPROCESS_HPP_

#include <string>

namespace perturbkit {

struct SubprocessResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

// Runs `command` through /bin/sh -c, feeding stdin_data on stdin and
// capturing both output streams.  stdin is written from a helper thread so
// large payloads cannot deadlock against a filling stdout pipe.  Exit code
// 127 from the shell means the command was not found.
SubprocessResult run_subprocess(const std::string& command,
                                const std::string& stdin_data);

}  // namespace perturbkit

#endif  // PERTURBKIT_SUBPROCESS_HPP_
