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

#include "captionforge/rouge.h"

#include <algorithm>
#include <vector>

#include "captionforge/errors.h"

namespace captionforge::metrics {

size_t LcsLength(std::span<const std::string> a,
                 std::span<const std::string> b) {
  // Two rolling rows of the classic DP table.
  std::vector<size_t> prev(b.size() + 1, 0), curr(b.size() + 1, 0);
  for (size_t i = 1; i <= a.size(); ++i) {
    for (size_t j = 1; j <= b.size(); ++j) {
      curr[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1
                                     : std::max(prev[j], curr[j - 1]);
    }
    std::swap(prev, curr);
  }
  return prev[b.size()];
}

double RougeL(const Tokens& cand, const RefSet& refs, double beta) {
  if (refs.empty()) throw EmptyReferenceSetError("ROUGE-L needs >= 1 reference");
  const double beta2 = beta * beta;
  double best = 0.0;
  for (const Tokens& ref : refs) {
    if (cand.empty() || ref.empty()) continue;
    const size_t lcs = LcsLength(cand, ref);
    if (lcs == 0) continue;
    const double p = static_cast<double>(lcs) / static_cast<double>(cand.size());
    const double r = static_cast<double>(lcs) / static_cast<double>(ref.size());
    const double f = ((1.0 + beta2) * p * r) / (r + beta2 * p);
    best = std::max(best, f);
  }
  return best;
}

}  // namespace captionforge::metrics
