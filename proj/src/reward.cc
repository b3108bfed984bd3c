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

#include "captionforge/reward.h"

#include <cmath>
#include <string>
#include <vector>

#include "captionforge/bleu.h"
#include "captionforge/errors.h"
#include "captionforge/meteor.h"
#include "captionforge/rouge.h"

namespace captionforge::reward {
namespace {

struct Field {
  const char* key;
  double HybridWeights::*member;
};

constexpr Field kFields[] = {
    {"cider", &HybridWeights::cider},   {"bleu1", &HybridWeights::bleu1},
    {"bleu2", &HybridWeights::bleu2},   {"bleu3", &HybridWeights::bleu3},
    {"bleu4", &HybridWeights::bleu4},   {"meteor", &HybridWeights::meteor},
    {"rouge_l", &HybridWeights::rouge_l},
};

}  // namespace

void HybridWeights::Validate() const {
  bool any_positive = false;
  for (const Field& f : kFields) {
    const double w = this->*f.member;
    if (!std::isfinite(w) || w < 0.0) {
      throw InvalidWeightsError(std::string("weight '") + f.key +
                                "' must be finite and >= 0");
    }
    any_positive |= w > 0.0;
  }
  if (!any_positive) throw InvalidWeightsError("all reward weights are zero");
}

double HybridWeights::UpperBound() const {
  return metrics::kCiderScale * cider + bleu1 + bleu2 + bleu3 + bleu4 +
         meteor + rouge_l;
}

HybridWeights HybridWeights::FromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidWeightsError("weights must be a JSON object");
  HybridWeights w = Zero();
  for (const auto& [key, value] : j.items()) {
    const Field* field = nullptr;
    for (const Field& f : kFields) {
      if (key == f.key) field = &f;
    }
    if (field == nullptr) {
      throw InvalidWeightsError("unknown reward weight '" + key + "'");
    }
    if (!value.is_number()) {
      throw InvalidWeightsError("reward weight '" + key + "' is not a number");
    }
    w.*(field->member) = value.get<double>();
  }
  w.Validate();
  return w;
}

nlohmann::json HybridWeights::ToJson() const {
  nlohmann::json j;
  for (const Field& f : kFields) j[f.key] = this->*f.member;
  return j;
}

HybridWeights HybridWeights::operator+(const HybridWeights& o) const {
  HybridWeights out;
  for (const Field& f : kFields) out.*f.member = this->*f.member + o.*f.member;
  return out;
}

HybridWeights HybridWeights::operator*(double s) const {
  HybridWeights out;
  for (const Field& f : kFields) out.*f.member = this->*f.member * s;
  return out;
}

double HybridReward(const Tokens& cand, const RefSet& refs,
                    const HybridWeights& weights, const RewardContext& ctx) {
  weights.Validate();
  double total = 0.0;
  if (weights.cider > 0.0) {
    if (ctx.idf == nullptr) throw EmptyIdfError("reward needs an IDF table");
    total += weights.cider * metrics::Cider(cand, refs, *ctx.idf, ctx.cider);
  }
  const double bleu_w[] = {weights.bleu1, weights.bleu2, weights.bleu3,
                           weights.bleu4};
  int max_order = 0;
  for (int n = 1; n <= 4; ++n) {
    if (bleu_w[n - 1] > 0.0) max_order = n;
  }
  if (max_order > 0) {
    const std::vector<double> bleu = metrics::BleuSentence(cand, refs, max_order);
    for (int n = 1; n <= max_order; ++n) {
      if (bleu_w[n - 1] > 0.0) total += bleu_w[n - 1] * bleu[n - 1];
    }
  }
  if (weights.meteor > 0.0) {
    total += weights.meteor * metrics::MeteorLite(cand, refs, ctx.language);
  }
  if (weights.rouge_l > 0.0) {
    total += weights.rouge_l * metrics::RougeL(cand, refs);
  }
  return total;
}

double HybridReward(const Tokens& cand, const RefSet& refs,
                    const HybridWeights& weights, const IdfTable& idf,
                    Language language) {
  return HybridReward(cand, refs, weights, RewardContext{&idf, language});
}

double ScstAdvantage(const Tokens& sampled, const Tokens& greedy,
                     const RefSet& refs, const HybridWeights& weights,
                     const RewardContext& ctx) {
  return HybridReward(sampled, refs, weights, ctx) -
         HybridReward(greedy, refs, weights, ctx);
}

double ScstAdvantage(const Tokens& sampled, const Tokens& greedy,
                     const RefSet& refs, const HybridWeights& weights,
                     const IdfTable& idf, Language language) {
  return ScstAdvantage(sampled, greedy, refs, weights,
                       RewardContext{&idf, language});
}

}  // namespace captionforge::reward
