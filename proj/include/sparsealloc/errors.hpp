/*
Copyright (c) 2026 The sparse-alloc authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/
#pragma once

#include <stdexcept>
#include <string>

namespace sparsealloc {

/// Instance construction or parsing failed (bad index, duplicate edge,
/// zero capacity, malformed file).
class MalformedInstance : public std::runtime_error {
 public:
  explicit MalformedInstance(const std::string& what)
      : std::runtime_error(what) {}
};

/// Algorithm parameters out of range.
class InvalidConfig : public std::runtime_error {
 public:
  explicit InvalidConfig(const std::string& what)
      : std::runtime_error(what) {}
};

/// File could not be read or written.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

/// Input exceeds a hard size limit of an exhaustive routine.
class TooLarge : public std::runtime_error {
 public:
  explicit TooLarge(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sparsealloc
