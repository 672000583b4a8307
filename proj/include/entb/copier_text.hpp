// Copyright 2026 The entb Authors
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

// Plain-text copier records:
//
//   # optional comment
//   C[1][1] = 0.81649658092772603
//   ...
//   D[4][4] = 0
//
// Indices are 1-based (row i of |R_i>, column k of |Z_k>). Keys may appear
// in any order; absent keys are zero. Several records in one file are
// separated by a line containing only "---". Values are written with 17
// significant digits and the C locale, so write/read is lossless.

#pragma once

#include <array>
#include <charconv>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "entb/copier.hpp"
#include "entb/errors.hpp"

namespace entb {

/// Shortest round-trip-safe decimal with at most 17 significant digits.
inline std::string format_g17(double x) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x,
                                 std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

/// Fixed notation with `decimals` digits after the point.
inline std::string format_fixed(double x, int decimals) {
  std::array<char, 128> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x,
                                 std::chars_format::fixed, decimals);
  return std::string(buf.data(), res.ptr);
}

inline std::string to_text(const CopierSpec& spec) {
  std::string out;
  for (char table : {'C', 'D'}) {
    const auto& t = table == 'C' ? spec.c : spec.d;
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t k = 0; k < 4; ++k) {
        out += table;
        out += '[' + std::to_string(i + 1) + "][" + std::to_string(k + 1) + "] = ";
        out += format_g17(t[i][k]);
        out += '\n';
      }
    }
  }
  return out;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

inline std::size_t parse_index(std::string_view s, std::size_t line_no) {
  if (s.size() != 1 || s[0] < '1' || s[0] > '4') {
    throw ParseError("line " + std::to_string(line_no) + ": index must be 1..4");
  }
  return std::size_t(s[0] - '1');
}

}  // namespace detail

/// Parses every record in `text`.
inline std::vector<CopierSpec> parse_copier_specs(std::string_view text) {
  std::vector<CopierSpec> specs;
  CopierSpec current;
  std::array<bool, 32> seen{};
  bool any = false;
  std::size_t line_no = 0;

  auto flush = [&] {
    if (any) specs.push_back(current);
    current = CopierSpec{};
    seen.fill(false);
    any = false;
  };

  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = detail::trim(line);
    if (line.empty()) continue;
    if (line == "---") {
      flush();
      continue;
    }
    // X[i][k] = value
    if (line.size() < 8 || (line[0] != 'C' && line[0] != 'D') || line[1] != '[' ||
        line[3] != ']' || line[4] != '[' || line[6] != ']') {
      throw ParseError("line " + std::to_string(line_no) + ": expected C[i][k] = value");
    }
    const std::size_t i = detail::parse_index(line.substr(2, 1), line_no);
    const std::size_t k = detail::parse_index(line.substr(5, 1), line_no);
    std::string_view rest = detail::trim(line.substr(7));
    if (rest.empty() || rest.front() != '=') {
      throw ParseError("line " + std::to_string(line_no) + ": missing '='");
    }
    rest = detail::trim(rest.substr(1));
    double value = 0.0;
    const auto res = std::from_chars(rest.data(), rest.data() + rest.size(), value);
    if (res.ec != std::errc{} || res.ptr != rest.data() + rest.size()) {
      throw ParseError("line " + std::to_string(line_no) + ": bad number '" +
                       std::string(rest) + "'");
    }
    const bool is_c = line[0] == 'C';
    const std::size_t slot = (is_c ? 0 : 16) + 4 * i + k;
    if (seen[slot]) {
      throw ParseError("line " + std::to_string(line_no) + ": duplicate key");
    }
    seen[slot] = true;
    any = true;
    (is_c ? current.c : current.d)[i][k] = value;
  }
  flush();
  return specs;
}

/// Parses exactly one record.
inline CopierSpec parse_copier_spec(std::string_view text) {
  auto specs = parse_copier_specs(text);
  if (specs.size() != 1) {
    throw ParseError("expected one copier record, found " + std::to_string(specs.size()));
  }
  return specs.front();
}

/// Reads the first record of a spec file and checks the isometry
/// conditions. Throws std::ios_base::failure when the file is unreadable.
inline CopierSpec load_copier_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  auto specs = parse_copier_specs(buf.str());
  if (specs.empty()) throw ParseError(path + ": no copier record");
  validate(specs.front());
  return specs.front();
}

}  // namespace entb
