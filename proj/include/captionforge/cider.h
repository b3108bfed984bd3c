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

// CIDEr consensus scoring.
//
// Each sentence becomes, per order n = 1..4, a vector of tf * idf weights
// where tf is the raw n-gram count and idf(g) = log(N / df(g)) over the N
// reference sets of the corpus. For every reference the per-order cosine
// similarity is computed, the four orders are averaged, the references are
// averaged, and the result is scaled by 10.
//
// CIDEr-D (default) clips each candidate weight to the reference weight
// before the dot product and multiplies each order by the Gaussian length
// penalty exp(-(lc - lr)^2 / (2 sigma^2)) with token lengths lc, lr and
// sigma = 6. Plain CIDEr does neither.
//
// N-grams never seen in the reference corpus get idf 0.

#ifndef CAPTIONFORGE_CIDER_H_
#define CAPTIONFORGE_CIDER_H_

#include <span>
#include <string_view>

#include "captionforge/ngram.h"

namespace captionforge::metrics {

enum class CiderVariant { kCiderD, kPlain };

// Parses "d" or "plain". Throws InputError otherwise.
CiderVariant ParseCiderVariant(std::string_view name);

inline constexpr double kCiderSigma = 6.0;
inline constexpr double kCiderScale = 10.0;

class IdfTable {
 public:
  IdfTable() = default;

  // doc_freq[g] counts the reference sets in which g occurs in at least one
  // reference, for every order 1..max_n.
  static IdfTable Build(std::span<const RefSet> refs,
                        int max_n = kMaxNGramOrder);

  int num_docs() const { return num_docs_; }
  int max_n() const { return max_n_; }
  // 0 when the n-gram was never seen.
  int DocFreq(const NGram& gram) const;
  // log(N / df); unseen n-grams fall back to df = N, i.e. idf 0.
  double Idf(const NGram& gram) const;
  const NGramCounts& doc_freq() const { return doc_freq_; }

 private:
  int num_docs_ = 0;
  int max_n_ = kMaxNGramOrder;
  NGramCounts doc_freq_;
};

// Throws EmptyIdfError for a table built from zero reference sets and
// EmptyReferenceSetError for an empty `refs`.
double Cider(const Tokens& cand, const RefSet& refs, const IdfTable& idf,
             CiderVariant variant = CiderVariant::kCiderD,
             double sigma = kCiderSigma);

}  // namespace captionforge::metrics

#endif  // CAPTIONFORGE_CIDER_H_
