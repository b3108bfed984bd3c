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

#ifndef CAPTIONFORGE_VOCABULARY_H_
#define CAPTIONFORGE_VOCABULARY_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "captionforge/text.h"
#include "json.hpp"

namespace captionforge {

using TokenId = std::int32_t;

inline constexpr TokenId kPadId = 0;
inline constexpr TokenId kBosId = 1;
inline constexpr TokenId kEosId = 2;
inline constexpr TokenId kUnkId = 3;
inline constexpr int kNumReserved = 4;
inline constexpr int kDefaultMinCount = 5;

inline constexpr std::string_view kPadToken = "<pad>";
inline constexpr std::string_view kBosToken = "<bos>";
inline constexpr std::string_view kEosToken = "<eos>";
inline constexpr std::string_view kUnkToken = "<unk>";

// Immutable token <-> id mapping. Ids are dense; the first four are the
// reserved PAD/BOS/EOS/UNK entries, followed by corpus tokens in descending
// frequency with ties broken by byte-wise token order.
class Vocabulary {
 public:
  // Keeps every token seen at least `min_count` times. Tokens spelled like
  // a reserved entry are never counted. Throws EmptyCorpusError if the
  // corpus holds no tokens at all.
  static Vocabulary Build(std::span<const Caption> corpus,
                          int min_count = kDefaultMinCount);

  // `tokens` is the full id-ordered list including the reserved prefix.
  static Vocabulary FromTokens(std::vector<std::string> tokens, int min_count);

  // {"min_count": n, "tokens": [...]} in id order.
  nlohmann::json ToJson() const;
  static Vocabulary FromJson(const nlohmann::json& j);

  int size() const { return static_cast<int>(id_to_token_.size()); }
  int min_count() const { return min_count_; }
  const std::vector<std::string>& tokens() const { return id_to_token_; }

  bool Contains(std::string_view token) const;
  // UNK id for out-of-vocabulary tokens.
  TokenId Lookup(std::string_view token) const;
  // Throws IdOutOfRangeError.
  const std::string& Token(TokenId id) const;

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.min_count_ == b.min_count_ && a.id_to_token_ == b.id_to_token_;
  }

 private:
  Vocabulary(std::vector<std::string> tokens, int min_count);

  int min_count_;
  std::vector<std::string> id_to_token_;
  std::unordered_map<std::string, TokenId> token_to_id_;
};

// BOS + ids + EOS; unknown tokens become UNK.
std::vector<TokenId> Encode(std::span<const std::string> tokens,
                            const Vocabulary& vocab);
inline std::vector<TokenId> Encode(const Caption& caption,
                                   const Vocabulary& vocab) {
  return Encode(caption.tokens, vocab);
}

// Drops BOS/EOS/PAD and maps the rest back to tokens. Throws
// IdOutOfRangeError for ids outside [0, |V|).
std::vector<std::string> DecodeIds(std::span<const TokenId> ids,
                                   const Vocabulary& vocab);

}  // namespace captionforge

#endif  // CAPTIONFORGE_VOCABULARY_H_
