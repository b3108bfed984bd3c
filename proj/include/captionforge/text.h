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

// Caption tokenization and truncation.
//
// English text is lowercased and every ASCII punctuation character becomes a
// standalone token; the result is then split on whitespace. Lowercasing
// covers ASCII, Latin-1, Greek and basic Cyrillic capitals. Chinese input is
// expected to be segmented into words already and is only split on
// whitespace.

#ifndef CAPTIONFORGE_TEXT_H_
#define CAPTIONFORGE_TEXT_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace captionforge {

enum class Language { kEnglish, kChinese };

// Parses "en"/"english" or "zh"/"chinese". Throws InputError otherwise.
Language ParseLanguage(std::string_view name);
std::string_view LanguageName(Language language);

inline constexpr int kMaxCaptionTokens = 30;

struct Caption {
  std::string id;
  std::vector<std::string> tokens;
  Language language = Language::kEnglish;

  friend bool operator==(const Caption&, const Caption&) = default;
};

std::vector<std::string> Tokenize(std::string_view raw, Language language);

// First min(tokens.size(), max_len) tokens. max_len must be >= 1.
std::vector<std::string> Truncate(std::span<const std::string> tokens,
                                  int max_len = kMaxCaptionTokens);

// Tokenize + Truncate.
Caption MakeCaption(std::string id, std::string_view raw, Language language,
                    int max_len = kMaxCaptionTokens);

// Joins tokens with single spaces. No detokenization heuristics are applied.
std::string JoinTokens(std::span<const std::string> tokens);

}  // namespace captionforge

#endif  // CAPTIONFORGE_TEXT_H_
