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

#ifndef PERTURBKIT_ERRORS_HPP_
#define PERTURBKIT_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace perturbkit {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Input data violates a documented invariant (bad geometry, empty clip, ...).
class InvalidInput : public Error {
 public:
  explicit InvalidInput(const std::string& what) : Error(what) {}
};

// A (category, name) pair or severity not present in the registry.
class UnknownPerturbation : public Error {
 public:
  explicit UnknownPerturbation(const std::string& what) : Error(what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(what) {}
};

// The external encoder binary could not be spawned at all. Kept distinct from
// EncoderFailed so callers can skip MPEG work and still run everything else.
class EncoderMissing : public Error {
 public:
  explicit EncoderMissing(const std::string& what) : Error(what) {}
};

// The encoder ran but exited nonzero or produced unusable output.
class EncoderFailed : public Error {
 public:
  explicit EncoderFailed(const std::string& what) : Error(what) {}
};

class PluginError : public Error {
 public:
  explicit PluginError(const std::string& what) : Error(what) {}
};

}  // namespace perturbkit

#endif  // PERTURBKIT_ERRORS_HPP_
