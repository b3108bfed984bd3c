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

// BLEU-1..4.
//
// Clipped n-gram precision: each candidate n-gram count is clipped to its
// largest count in any single reference. The effective reference length is
// the reference length closest to the candidate length (the shorter one on
// a tie). Brevity penalty is exp(1 - r/c) for c < r and 0 for an empty
// candidate. BLEU-n is the brevity penalty times the geometric mean of the
// precisions of orders 1..n.

#ifndef CAPTIONFORGE_BLEU_H_
#define CAPTIONFORGE_BLEU_H_

#include <array>
#include <span>
#include <vector>

#include "captionforge/ngram.h"

namespace captionforge::metrics {

struct BleuStats {
  std::array<long, kMaxNGramOrder> matched{};
  std::array<long, kMaxNGramOrder> total{};
  long cand_len = 0;
  long ref_len = 0;

  BleuStats& operator+=(const BleuStats& other);
};

// Throws EmptyReferenceSetError when `refs` is empty.
BleuStats ComputeBleuStats(const Tokens& cand, const RefSet& refs,
                           int max_n = kMaxNGramOrder);

// Corpus BLEU from pooled statistics. Entry n-1 is BLEU-n. Orders with zero
// matches (or zero candidate n-grams) score 0.
std::vector<double> BleuFromStats(const BleuStats& stats,
                                  int max_n = kMaxNGramOrder);

// Candidates and reference sets are aligned by index; a size mismatch throws
// MismatchedIdsError.
std::vector<double> BleuCorpus(std::span<const Tokens> cands,
                               std::span<const RefSet> refs,
                               int max_n = kMaxNGramOrder);

// Sentence-level BLEU with add-one smoothing: an order with zero matched
// n-grams uses precision 1 / (total + 1). Entry n-1 is BLEU-n. An empty
// candidate scores 0 at every order.
std::vector<double> BleuSentence(const Tokens& cand, const RefSet& refs,
                                 int max_n = kMaxNGramOrder);

// BLEU-n only.
double BleuSentenceScore(const Tokens& cand, const RefSet& refs, int n);

}  // namespace captionforge::metrics

#endif  // CAPTIONFORGE_BLEU_H_
