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

#include "entsketch/stream_io.hpp"

#include <charconv>
#include <cmath>

namespace entsketch {
namespace {

std::string_view trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r\n\v\f";
  const auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(ws);
  return s.substr(first, last - first + 1);
}

double parse_quantity(std::string_view text, std::size_t line_number) {
  std::string_view digits = text;
  if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
  double value = 0.0;
  const auto [end, ec] =
      std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (digits.empty() || ec != std::errc() ||
      end != digits.data() + digits.size()) {
    throw ParseError(line_number,
                     "quantity '" + std::string(text) + "' is not a number");
  }
  if (!std::isfinite(value)) {
    throw ParseError(line_number, "quantity must be finite");
  }
  return value;
}

}  // namespace

std::optional<StreamRecord> parse_stream_line(std::string_view line,
                                              std::size_t line_number,
                                              char delimiter) {
  const std::string_view content = trim(line);
  if (content.empty() || content.front() == '#') return std::nullopt;

  const auto split = content.find(delimiter);
  const std::string_view item = trim(content.substr(0, split));
  if (item.empty()) throw ParseError(line_number, "empty item token");
  if (split == std::string_view::npos) return StreamRecord{item, 1.0};
  return StreamRecord{item,
                      parse_quantity(trim(content.substr(split + 1)), line_number)};
}

std::size_t read_stream(
    std::istream& in, char delimiter,
    const std::function<void(std::string_view item, double delta)>& sink) {
  std::string line;
  std::size_t line_number = 0;
  std::size_t records = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (auto record = parse_stream_line(line, line_number, delimiter)) {
      sink(record->item, record->delta);
      ++records;
    }
  }
  if (in.bad()) throw std::runtime_error("I/O error while reading stream");
  return records;
}

}  // namespace entsketch
