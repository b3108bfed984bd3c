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

#include "captionforge/ngram.h"

#include <stdexcept>

namespace captionforge::metrics {

namespace {

size_t CheckedOrder(int max_n) {
  if (max_n < 1) throw std::invalid_argument("max_n must be >= 1");
  return static_cast<size_t>(max_n);
}

}  // namespace

NGramMultiset::NGramMultiset(std::span<const std::string> tokens, int max_n)
    : orders_(CheckedOrder(max_n)) {
  for (int n = 1; n <= max_n; ++n) {
    if (tokens.size() < static_cast<size_t>(n)) break;
    NGramCounts& counts = orders_[static_cast<size_t>(n - 1)];
    for (size_t start = 0; start + n <= tokens.size(); ++start) {
      ++counts[NGram(tokens.begin() + start, tokens.begin() + start + n)];
    }
  }
}

int NGramMultiset::Total(int n) const {
  int total = 0;
  for (const auto& [gram, count] : order(n)) total += count;
  return total;
}

int NGramMultiset::Count(const NGram& gram) const {
  if (gram.empty() || gram.size() > orders_.size()) return 0;
  const NGramCounts& counts = orders_[gram.size() - 1];
  auto it = counts.find(gram);
  return it == counts.end() ? 0 : it->second;
}

bool NGramMultiset::empty() const {
  return orders_.empty() || orders_.front().empty();
}

}  // namespace captionforge::metrics
