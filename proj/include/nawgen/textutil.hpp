// Copyright 2026 The nawgen Authors
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

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nawgen {

/// Malformed input (bad UTF-8, unparsable file, bad record shape).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Semantically invalid data (duplicates, constraint violations, bad requests).
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace text {

/// Decodes one UTF-8 code point starting at `pos`; advances `pos` past it.
/// Throws ParseError on malformed sequences.
char32_t decode_utf8(std::string_view s, std::size_t& pos);

void encode_utf8(char32_t cp, std::string& out);

/// Validates that `s` is well-formed UTF-8.
bool is_valid_utf8(std::string_view s);

/// Lowercases a code point: ASCII A-Z plus the Latin-1/Latin-A accented
/// capitals used in Nawatl-adjacent orthographies.
char32_t to_lower(char32_t cp);

/// Maps an accented Latin vowel (or u-umlaut) to its bare base letter;
/// returns the input unchanged if it carries no known mark.
char32_t strip_mark(char32_t cp);

/// ASCII-range whitespace used for tokenization (space, tab, CR, VT, FF).
inline bool is_ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f';
}

std::string to_lower_copy(std::string_view s);

/// Strips leading/trailing ASCII whitespace.
std::string_view trim(std::string_view s);

/// Splits a line into whitespace-separated tokens.
std::vector<std::string_view> split_tokens(std::string_view line);

/// Splits on a single-character delimiter; keeps empty fields.
std::vector<std::string_view> split_char(std::string_view s, char delim);

/// Drops a UTF-8 byte-order mark if present at the start.
std::string_view strip_bom(std::string_view s);

}  // namespace text
}  // namespace nawgen
