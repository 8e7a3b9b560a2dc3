// Copyright 2026 The entsketch Authors.
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

#ifndef ENTSKETCH_STREAM_IO_HPP
#define ENTSKETCH_STREAM_IO_HPP

#include <cstddef>
#include <functional>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace entsketch {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

struct StreamRecord {
  std::string_view item;
  double delta;
};

// Stream file lines look like `item<delim>quantity`. The quantity is a signed
// decimal and defaults to +1 when the delimiter and field are absent. Blank
// lines and lines starting with '#' are skipped. Surrounding whitespace is
// trimmed from both fields.
std::optional<StreamRecord> parse_stream_line(std::string_view line,
                                              std::size_t line_number,
                                              char delimiter = ',');

/// Reads `in` once, calling `sink` per record. Only the current line is
/// buffered. Returns the number of records delivered.
std::size_t read_stream(
    std::istream& in, char delimiter,
    const std::function<void(std::string_view item, double delta)>& sink);

}  // namespace entsketch

#endif  // ENTSKETCH_STREAM_IO_HPP
