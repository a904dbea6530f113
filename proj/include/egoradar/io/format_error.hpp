// Copyright 2026 The egoradar Authors
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

namespace egoradar::io {

/// Malformed input file. `line()` is 1-based, 0 when the error is not tied to a line.
class FormatError : public std::runtime_error {
 public:
  FormatError(std::string source, std::size_t line, const std::string& message)
      : std::runtime_error(line ? source + ":" + std::to_string(line) + ": " + message : source + ": " + message),
        source_(std::move(source)),
        line_(line) {}
  const std::string& source() const noexcept { return source_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

/// Input file that does not exist or cannot be opened.
class FileNotFound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace egoradar::io
