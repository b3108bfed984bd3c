// Copyright 2026 The CaptionForge Authors.
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

#include "captionforge/text.h"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

#include "captionforge/errors.h"

namespace captionforge {
namespace {

// One decoded code point and the byte span it came from. Invalid UTF-8
// bytes decode as themselves with length 1 so that nothing is dropped.
struct CodePoint {
  char32_t value;
  size_t length;
};

CodePoint DecodeAt(std::string_view s, size_t pos) {
  const auto b0 = static_cast<unsigned char>(s[pos]);
  if (b0 < 0x80) return {b0, 1};
  size_t len = 0;
  char32_t cp = 0;
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
    return {b0, 1};
  }
  if (pos + len > s.size()) return {b0, 1};
  for (size_t i = 1; i < len; ++i) {
    const auto b = static_cast<unsigned char>(s[pos + i]);
    if ((b & 0xC0) != 0x80) return {b0, 1};
    cp = (cp << 6) | (b & 0x3F);
  }
  return {cp, len};
}

void AppendUtf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool IsSpace(char32_t cp) {
  switch (cp) {
    case U' ':
    case U'\t':
    case U'\n':
    case U'\r':
    case U'\v':
    case U'\f':
    case 0x00A0:  // no-break space
    case 0x3000:  // ideographic space
      return true;
    default:
      return false;
  }
}

bool IsAsciiPunct(char32_t cp) {
  return (cp >= 0x21 && cp <= 0x2F) || (cp >= 0x3A && cp <= 0x40) ||
         (cp >= 0x5B && cp <= 0x60) || (cp >= 0x7B && cp <= 0x7E);
}

char32_t ToLower(char32_t cp) {
  if (cp >= U'A' && cp <= U'Z') return cp + 0x20;
  // Latin-1 capitals, skipping the multiplication sign.
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;
  // Greek capitals, skipping the unassigned U+03A2.
  if (cp >= 0x391 && cp <= 0x3A9 && cp != 0x3A2) return cp + 0x20;
  if (cp >= 0x410 && cp <= 0x42F) return cp + 0x20;
  if (cp >= 0x400 && cp <= 0x40F) return cp + 0x50;
  return cp;
}

// Invalid bytes are re-emitted verbatim rather than re-encoded.
void AppendRaw(std::string& out, std::string_view raw, size_t pos,
               const CodePoint& cp, char32_t value) {
  if (cp.length == 1 && cp.value >= 0x80) {
    out.push_back(raw[pos]);
  } else {
    AppendUtf8(out, value);
  }
}

}  // namespace

Language ParseLanguage(std::string_view name) {
  if (name == "en" || name == "english") return Language::kEnglish;
  if (name == "zh" || name == "chinese") return Language::kChinese;
  throw InputError("unknown language '" + std::string(name) +
                   "' (expected en or zh)");
}

std::string_view LanguageName(Language language) {
  return language == Language::kEnglish ? "en" : "zh";
}

std::vector<std::string> Tokenize(std::string_view raw, Language language) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  };
  size_t pos = 0;
  while (pos < raw.size()) {
    const CodePoint cp = DecodeAt(raw, pos);
    if (IsSpace(cp.value)) {
      flush();
    } else if (language == Language::kEnglish && IsAsciiPunct(cp.value)) {
      flush();
      tokens.emplace_back(1, static_cast<char>(cp.value));
    } else if (language == Language::kEnglish) {
      AppendRaw(current, raw, pos, cp, ToLower(cp.value));
    } else {
      current.append(raw.substr(pos, cp.length));
    }
    pos += cp.length;
  }
  flush();
  return tokens;
}

std::vector<std::string> Truncate(std::span<const std::string> tokens,
                                  int max_len) {
  if (max_len < 1) throw std::invalid_argument("max_len must be >= 1");
  const size_t keep = std::min(tokens.size(), static_cast<size_t>(max_len));
  return {tokens.begin(), tokens.begin() + static_cast<std::ptrdiff_t>(keep)};
}

Caption MakeCaption(std::string id, std::string_view raw, Language language,
                    int max_len) {
  return Caption{std::move(id), Truncate(Tokenize(raw, language), max_len),
                 language};
}

std::string JoinTokens(std::span<const std::string> tokens) {
  std::string out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

}  // namespace captionforge
