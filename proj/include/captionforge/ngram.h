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

#ifndef CAPTIONFORGE_NGRAM_H_
#define CAPTIONFORGE_NGRAM_H_

#include <map>
#include <span>
#include <string>
#include <vector>

namespace captionforge::metrics {

using Tokens = std::vector<std::string>;
// All references for one candidate. Must hold at least one reference.
using RefSet = std::vector<Tokens>;
using NGram = std::vector<std::string>;
using NGramCounts = std::map<NGram, int>;

inline constexpr int kMaxNGramOrder = 4;

// Contiguous n-gram counts for orders 1..max_n.
class NGramMultiset {
 public:
  NGramMultiset() = default;
  explicit NGramMultiset(std::span<const std::string> tokens,
                         int max_n = kMaxNGramOrder);

  int max_n() const { return static_cast<int>(orders_.size()); }
  // Counts for order n, 1 <= n <= max_n.
  const NGramCounts& order(int n) const { return orders_.at(n - 1); }
  // Number of n-gram occurrences of order n, i.e. max(0, len - n + 1).
  int Total(int n) const;
  int Count(const NGram& gram) const;
  bool empty() const;

 private:
  std::vector<NGramCounts> orders_;
};

inline NGramMultiset ExtractNGrams(std::span<const std::string> tokens,
                                   int max_n = kMaxNGramOrder) {
  return NGramMultiset(tokens, max_n);
}

}  // namespace captionforge::metrics

#endif  // CAPTIONFORGE_NGRAM_H_
