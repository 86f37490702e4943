// Copyright 2026 The lnndqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lnndqc {

/// Malformed QASM input. Carries the 1-based source line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// The input graph is not a member of a family a transformation supports.
class UnsupportedTopology : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A non-local gate cannot be lowered with the requested teleport mode.
class UnsupportedLowering : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A circuit does not fit the physical device it is mapped onto.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lnndqc
