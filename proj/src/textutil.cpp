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

#include "nawgen/textutil.hpp"

namespace nawgen::text {

char32_t decode_utf8(std::string_view s, std::size_t& pos) {
  if (pos >= s.size()) throw ParseError("utf-8: read past end of input");
  const auto byte = [&](std::size_t i) -> uint32_t {
    return static_cast<unsigned char>(s[i]);
  };
  uint32_t b0 = byte(pos);
  if (b0 < 0x80) {
    ++pos;
    return b0;
  }
  int len = 0;
  uint32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    throw ParseError("utf-8: invalid lead byte");
  }
  if (pos + len > s.size()) throw ParseError("utf-8: truncated sequence");
  for (int i = 1; i < len; ++i) {
    uint32_t b = byte(pos + i);
    if ((b & 0xC0) != 0x80) throw ParseError("utf-8: invalid continuation byte");
    cp = (cp << 6) | (b & 0x3F);
  }
  // Reject overlong encodings and surrogates.
  if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) ||
      (len == 4 && cp < 0x10000) || (cp >= 0xD800 && cp <= 0xDFFF) ||
      cp > 0x10FFFF) {
    throw ParseError("utf-8: invalid code point");
  }
  pos += len;
  return cp;
}

void encode_utf8(char32_t cp, std::string& out) {
  uint32_t c = cp;
  if (c < 0x80) {
    out.push_back(static_cast<char>(c));
  } else if (c < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (c >> 6)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else if (c < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (c >> 12)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (c >> 18)));
    out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  }
}

bool is_valid_utf8(std::string_view s) {
  std::size_t pos = 0;
  try {
    while (pos < s.size()) decode_utf8(s, pos);
  } catch (const ParseError&) {
    return false;
  }
  return true;
}

char32_t to_lower(char32_t cp) {
  if (cp >= U'A' && cp <= U'Z') return cp + 32;
  switch (cp) {
    case U'Á': return U'á';
    case U'É': return U'é';
    case U'Í': return U'í';
    case U'Ó': return U'ó';
    case U'Ú': return U'ú';
    case U'À': return U'à';
    case U'È': return U'è';
    case U'Ì': return U'ì';
    case U'Ò': return U'ò';
    case U'Ù': return U'ù';
    case U'Â': return U'â';
    case U'Ê': return U'ê';
    case U'Î': return U'î';
    case U'Ô': return U'ô';
    case U'Û': return U'û';
    case U'Ä': return U'ä';
    case U'Ë': return U'ë';
    case U'Ï': return U'ï';
    case U'Ö': return U'ö';
    case U'Ü': return U'ü';
    case U'Ā': return U'ā';
    case U'Ē': return U'ē';
    case U'Ī': return U'ī';
    case U'Ō': return U'ō';
    case U'Ū': return U'ū';
    case U'Ñ': return U'ñ';
    default: return cp;
  }
}

char32_t strip_mark(char32_t cp) {
  switch (cp) {
    case U'á': case U'à': case U'â': case U'ä': case U'ā': return U'a';
    case U'é': case U'è': case U'ê': case U'ë': case U'ē': return U'e';
    case U'í': case U'ì': case U'î': case U'ï': case U'ī': return U'i';
    case U'ó': case U'ò': case U'ô': case U'ö': case U'ō': return U'o';
    case U'ú': case U'ù': case U'û': case U'ü': case U'ū': return U'u';
    default: return cp;
  }
}

std::string to_lower_copy(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t pos = 0;
  while (pos < s.size()) {
    char32_t cp = decode_utf8(s, pos);
    encode_utf8(to_lower(cp), out);
  }
  return out;
}

std::string_view trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && is_ascii_space(s[b])) ++b;
  while (e > b && is_ascii_space(s[e - 1])) --e;
  return s.substr(b, e - b);
}

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_ascii_space(line[i])) ++i;
    std::size_t start = i;
    while (i < line.size() && !is_ascii_space(line[i])) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

std::vector<std::string_view> split_char(std::string_view s, char delim) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == delim) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

std::string_view strip_bom(std::string_view s) {
  if (s.size() >= 3 && static_cast<unsigned char>(s[0]) == 0xEF &&
      static_cast<unsigned char>(s[1]) == 0xBB &&
      static_cast<unsigned char>(s[2]) == 0xBF) {
    return s.substr(3);
  }
  return s;
}

}  // namespace nawgen::text
