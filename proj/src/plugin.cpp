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

#include "perturbkit/plugin.hpp"

#include <map>
#include <sstream>

#include "json.hpp"
#include "perturbkit/errors.hpp"
#include "perturbkit/subprocess.hpp"

namespace perturbkit {

using nlohmann::json;

std::vector<Caption> run_plugin(const std::vector<Caption>& captions,
                                const std::string& command) {
  if (command.empty()) throw PluginError("empty plugin command");

  std::string stdin_data;
  for (const Caption& c : captions) {
    json j;
    j["id"] = c.clip_id;
    j["text"] = c.text;
    stdin_data += j.dump();
    stdin_data += '\n';
  }

  const SubprocessResult result = run_subprocess(command, stdin_data);
  if (result.exit_code != 0) {
    throw PluginError("plugin \"" + command + "\" exited with status " +
                      std::to_string(result.exit_code) +
                      (result.err.empty() ? "" : ": " + result.err));
  }

  std::map<std::string, std::string> by_id;
  std::istringstream lines(result.out);
  std::string line;
  size_t line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw PluginError("plugin output line " + std::to_string(line_no) +
                        " is not valid JSON: " + e.what());
    }
    if (!j.contains("id") || !j.contains("text")) {
      throw PluginError("plugin output line " + std::to_string(line_no) +
                        " is missing \"id\" or \"text\"");
    }
    by_id[j.at("id").get<std::string>()] = j.at("text").get<std::string>();
  }

  std::vector<Caption> out;
  out.reserve(captions.size());
  for (const Caption& c : captions) {
    const auto it = by_id.find(c.clip_id);
    if (it == by_id.end()) {
      throw PluginError("plugin \"" + command + "\" returned no line for id \"" +
                        c.clip_id + "\"");
    }
    out.push_back(Caption::make(c.clip_id, it->second));
  }
  return out;
}

}  // namespace perturbkit
