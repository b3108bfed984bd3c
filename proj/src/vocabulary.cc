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

#include "captionforge/vocabulary.h"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>

#include "captionforge/errors.h"

namespace captionforge {
namespace {

bool IsReservedSpelling(std::string_view token) {
  return token == kPadToken || token == kBosToken || token == kEosToken ||
         token == kUnkToken;
}

}  // namespace

Vocabulary::Vocabulary(std::vector<std::string> tokens, int min_count)
    : min_count_(min_count), id_to_token_(std::move(tokens)) {
  token_to_id_.reserve(id_to_token_.size());
  for (size_t i = 0; i < id_to_token_.size(); ++i) {
    token_to_id_.emplace(id_to_token_[i], static_cast<TokenId>(i));
  }
}

Vocabulary Vocabulary::Build(std::span<const Caption> corpus, int min_count) {
  if (min_count < 1) throw std::invalid_argument("min_count must be >= 1");
  std::map<std::string, long> counts;
  long total = 0;
  for (const Caption& caption : corpus) {
    for (const std::string& token : caption.tokens) {
      ++total;
      if (!IsReservedSpelling(token)) ++counts[token];
    }
  }
  if (total == 0) throw EmptyCorpusError("vocabulary corpus has no tokens");

  std::vector<std::pair<std::string, long>> kept;
  for (auto& [token, count] : counts) {
    if (count >= min_count) kept.emplace_back(token, count);
  }
  // std::map iteration already gives lexicographic order; a stable sort on
  // frequency keeps it as the tie-breaker.
  std::stable_sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    return a.second > b.second;
  });

  std::vector<std::string> tokens = {std::string(kPadToken),
                                     std::string(kBosToken),
                                     std::string(kEosToken),
                                     std::string(kUnkToken)};
  for (auto& [token, count] : kept) tokens.push_back(token);
  return Vocabulary(std::move(tokens), min_count);
}

Vocabulary Vocabulary::FromTokens(std::vector<std::string> tokens,
                                  int min_count) {
  if (tokens.size() < kNumReserved || tokens[kPadId] != kPadToken ||
      tokens[kBosId] != kBosToken || tokens[kEosId] != kEosToken ||
      tokens[kUnkId] != kUnkToken) {
    throw InputError("vocabulary must start with <pad> <bos> <eos> <unk>");
  }
  if (min_count < 1) throw InputError("vocabulary min_count must be >= 1");
  std::unordered_map<std::string, int> seen;
  for (const std::string& token : tokens) {
    if (token.empty()) throw InputError("vocabulary contains an empty token");
    if (++seen[token] > 1) {
      throw InputError("vocabulary contains duplicate token '" + token + "'");
    }
  }
  return Vocabulary(std::move(tokens), min_count);
}

nlohmann::json Vocabulary::ToJson() const {
  return nlohmann::json{{"min_count", min_count_}, {"tokens", id_to_token_}};
}

Vocabulary Vocabulary::FromJson(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("min_count") || !j.contains("tokens")) {
    throw InputError("vocabulary JSON needs 'min_count' and 'tokens'");
  }
  try {
    return FromTokens(j.at("tokens").get<std::vector<std::string>>(),
                      j.at("min_count").get<int>());
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed vocabulary JSON: ") + e.what());
  }
}

bool Vocabulary::Contains(std::string_view token) const {
  return token_to_id_.contains(std::string(token));
}

TokenId Vocabulary::Lookup(std::string_view token) const {
  auto it = token_to_id_.find(std::string(token));
  return it == token_to_id_.end() ? kUnkId : it->second;
}

const std::string& Vocabulary::Token(TokenId id) const {
  if (id < 0 || id >= size()) {
    throw IdOutOfRangeError("token id " + std::to_string(id) +
                            " outside vocabulary of size " +
                            std::to_string(size()));
  }
  return id_to_token_[static_cast<size_t>(id)];
}

std::vector<TokenId> Encode(std::span<const std::string> tokens,
                            const Vocabulary& vocab) {
  std::vector<TokenId> ids;
  ids.reserve(tokens.size() + 2);
  ids.push_back(kBosId);
  for (const std::string& token : tokens) ids.push_back(vocab.Lookup(token));
  ids.push_back(kEosId);
  return ids;
}

std::vector<std::string> DecodeIds(std::span<const TokenId> ids,
                                   const Vocabulary& vocab) {
  std::vector<std::string> tokens;
  tokens.reserve(ids.size());
  for (TokenId id : ids) {
    const std::string& token = vocab.Token(id);
    if (id == kBosId || id == kEosId || id == kPadId) continue;
    tokens.push_back(token);
  }
  return tokens;
}

}  // namespace captionforge
