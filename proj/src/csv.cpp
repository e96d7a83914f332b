/* Copyright 2026 The adtquant Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <charconv>
#include <cmath>
#include <optional>

#include "adtquant/formats.hpp"

namespace adtquant {

namespace {

std::string_view trim(std::string_view s) {
  const auto* ws = " \t\r";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::optional<double> parse_number(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return value;
}

}  // namespace

SampleSeries parse_csv_samples(std::string_view text) {
  SampleSeries series;
  std::size_t line_no = 0;
  bool seen_first = false;
  while (!text.empty()) {
    auto nl = text.find('\n');
    auto line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty()) continue;
    auto value = parse_number(line);
    if (!seen_first) {
      seen_first = true;
      if (!value) {
        series.source = std::string(line);
        continue;
      }
    }
    if (!value) {
      throw AdtError(codes::kCsv,
                     "line " + std::to_string(line_no) + ": not a number: '" + std::string(line) + "'");
    }
    if (!std::isfinite(*value)) {
      throw AdtError(codes::kCsv, "line " + std::to_string(line_no) + ": value is not finite");
    }
    series.values.push_back(*value);
  }
  if (series.values.size() < 2) {
    throw AdtError(codes::kCsv, "need at least 2 samples, got " +
                                    std::to_string(series.values.size()));
  }
  return series;
}

}  // namespace adtquant
