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

// Hybrid sequence reward: a nonnegative linear combination of sentence-level
// CIDEr-D, smoothed BLEU-1..4, METEOR-lite and ROUGE-L, plus the
// self-critical advantage r(sampled) - r(greedy).

#ifndef CAPTIONFORGE_REWARD_H_
#define CAPTIONFORGE_REWARD_H_

#include "captionforge/cider.h"
#include "captionforge/ngram.h"
#include "captionforge/text.h"
#include "json.hpp"

namespace captionforge::reward {

using metrics::IdfTable;
using metrics::RefSet;
using metrics::Tokens;

// Toolkit defaults, not tuned values: CIDEr 1, BLEU-4 0.5, METEOR 1,
// ROUGE-L 0.5.
struct HybridWeights {
  double cider = 1.0;
  double bleu1 = 0.0;
  double bleu2 = 0.0;
  double bleu3 = 0.0;
  double bleu4 = 0.5;
  double meteor = 1.0;
  double rouge_l = 0.5;

  static HybridWeights CiderOnly() { return {1.0, 0, 0, 0, 0, 0, 0}; }
  static HybridWeights Zero() { return {0, 0, 0, 0, 0, 0, 0}; }

  // Throws InvalidWeightsError if a weight is negative or non-finite, or if
  // every weight is zero.
  void Validate() const;
  // Largest attainable reward: 10 w_cider + the other weights.
  double UpperBound() const;

  // Keys cider, bleu1..bleu4, meteor, rouge_l. Missing keys are 0; unknown
  // keys are rejected. The result is validated.
  static HybridWeights FromJson(const nlohmann::json& j);
  nlohmann::json ToJson() const;

  HybridWeights operator+(const HybridWeights& o) const;
  HybridWeights operator*(double s) const;
  friend bool operator==(const HybridWeights&, const HybridWeights&) = default;
};

struct RewardContext {
  const IdfTable* idf = nullptr;
  Language language = Language::kEnglish;
  metrics::CiderVariant cider = metrics::CiderVariant::kCiderD;
};

// Sum over metrics of weight * sentence score. Metrics with zero weight are
// not evaluated.
double HybridReward(const Tokens& cand, const RefSet& refs,
                    const HybridWeights& weights, const RewardContext& ctx);

double HybridReward(const Tokens& cand, const RefSet& refs,
                    const HybridWeights& weights, const IdfTable& idf,
                    Language language = Language::kEnglish);

// hybrid_reward(sampled) - hybrid_reward(greedy).
double ScstAdvantage(const Tokens& sampled, const Tokens& greedy,
                     const RefSet& refs, const HybridWeights& weights,
                     const RewardContext& ctx);

double ScstAdvantage(const Tokens& sampled, const Tokens& greedy,
                     const RefSet& refs, const HybridWeights& weights,
                     const IdfTable& idf,
                     Language language = Language::kEnglish);

}  // namespace captionforge::reward

#endif  // CAPTIONFORGE_REWARD_H_
