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

#include "captionforge/bleu.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "captionforge/errors.h"

namespace captionforge::metrics {
namespace {

void CheckOrder(int max_n) {
  if (max_n < 1 || max_n > kMaxNGramOrder) {
    throw std::invalid_argument("BLEU order must be in [1, 4]");
  }
}

long ClosestRefLength(long cand_len, const RefSet& refs) {
  long best = static_cast<long>(refs.front().size());
  for (const Tokens& ref : refs) {
    const long len = static_cast<long>(ref.size());
    const long d = std::labs(len - cand_len);
    const long best_d = std::labs(best - cand_len);
    if (d < best_d || (d == best_d && len < best)) best = len;
  }
  return best;
}

double BrevityPenalty(long cand_len, long ref_len) {
  if (cand_len == 0) return 0.0;
  if (cand_len >= ref_len) return 1.0;
  return std::exp(1.0 - static_cast<double>(ref_len) /
                            static_cast<double>(cand_len));
}

}  // namespace

BleuStats& BleuStats::operator+=(const BleuStats& other) {
  for (int k = 0; k < kMaxNGramOrder; ++k) {
    matched[k] += other.matched[k];
    total[k] += other.total[k];
  }
  cand_len += other.cand_len;
  ref_len += other.ref_len;
  return *this;
}

BleuStats ComputeBleuStats(const Tokens& cand, const RefSet& refs, int max_n) {
  CheckOrder(max_n);
  if (refs.empty()) throw EmptyReferenceSetError("BLEU needs >= 1 reference");
  BleuStats stats;
  stats.cand_len = static_cast<long>(cand.size());
  stats.ref_len = ClosestRefLength(stats.cand_len, refs);

  const NGramMultiset cand_grams(cand, max_n);
  std::vector<NGramMultiset> ref_grams;
  ref_grams.reserve(refs.size());
  for (const Tokens& ref : refs) ref_grams.emplace_back(ref, max_n);

  for (int n = 1; n <= max_n; ++n) {
    long matched = 0;
    for (const auto& [gram, count] : cand_grams.order(n)) {
      int max_ref = 0;
      for (const NGramMultiset& r : ref_grams) {
        max_ref = std::max(max_ref, r.Count(gram));
      }
      matched += std::min(count, max_ref);
    }
    stats.matched[n - 1] = matched;
    stats.total[n - 1] = std::max(0L, stats.cand_len - n + 1);
  }
  return stats;
}

std::vector<double> BleuFromStats(const BleuStats& stats, int max_n) {
  CheckOrder(max_n);
  std::vector<double> scores(static_cast<size_t>(max_n), 0.0);
  const double bp = BrevityPenalty(stats.cand_len, stats.ref_len);
  double log_sum = 0.0;
  for (int n = 1; n <= max_n; ++n) {
    const long m = stats.matched[n - 1];
    const long t = stats.total[n - 1];
    if (m == 0 || t == 0) break;  // this and all higher orders stay 0
    log_sum += std::log(static_cast<double>(m) / static_cast<double>(t));
    scores[n - 1] = bp * std::exp(log_sum / n);
  }
  return scores;
}

std::vector<double> BleuCorpus(std::span<const Tokens> cands,
                               std::span<const RefSet> refs, int max_n) {
  if (cands.size() != refs.size()) {
    throw MismatchedIdsError("BLEU corpus has " + std::to_string(cands.size()) +
                             " candidates but " + std::to_string(refs.size()) +
                             " reference sets");
  }
  BleuStats pooled;
  for (size_t i = 0; i < cands.size(); ++i) {
    pooled += ComputeBleuStats(cands[i], refs[i], max_n);
  }
  return BleuFromStats(pooled, max_n);
}

std::vector<double> BleuSentence(const Tokens& cand, const RefSet& refs,
                                 int max_n) {
  const BleuStats stats = ComputeBleuStats(cand, refs, max_n);
  std::vector<double> scores(static_cast<size_t>(max_n), 0.0);
  if (stats.cand_len == 0) return scores;
  const double bp = BrevityPenalty(stats.cand_len, stats.ref_len);
  double log_sum = 0.0;
  for (int n = 1; n <= max_n; ++n) {
    const long m = stats.matched[n - 1];
    const long t = stats.total[n - 1];
    const double p = m > 0 ? static_cast<double>(m) / static_cast<double>(t)
                           : 1.0 / static_cast<double>(t + 1);
    log_sum += std::log(p);
    scores[n - 1] = bp * std::exp(log_sum / n);
  }
  return scores;
}

double BleuSentenceScore(const Tokens& cand, const RefSet& refs, int n) {
  return BleuSentence(cand, refs, n).back();
}

}  // namespace captionforge::metrics
