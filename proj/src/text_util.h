// Copyright 2026 The pkeys Authors
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

#ifndef PKEYS_SRC_TEXT_UTIL_H_
#define PKEYS_SRC_TEXT_UTIL_H_

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "pkeys/errors.h"
#include "pkeys/policy.h"

namespace pkeys {

using Tokens = std::vector<std::string_view>;

inline Tokens split_ws(std::string_view line) {
  Tokens out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

// Calls fn(line_number, tokens) for every non-blank line after stripping
// '#' comments.
template <typename Fn>
void for_each_directive(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    Tokens tok = split_ws(line);
    if (!tok.empty()) fn(line_no, tok);
  }
}

inline Label label_token(const Policy& p, std::string_view token,
                         std::size_t line) {
  try {
    return resolve_label(p, token);
  } catch (const IndexOutOfRange& e) {
    throw SyntaxError(line, e.what());
  }
}

}  // namespace pkeys

#endif  // PKEYS_SRC_TEXT_UTIL_H_
