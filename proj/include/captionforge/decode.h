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

// Greedy, sampling and beam-search decoding over any StepModel.
//
// A decode runs at most `max_len` steps; each step emits one token and the
// EOS token counts as a step. Banned tokens (PAD and BOS by default) are
// never emitted. Ties are always broken towards the lowest token id.

#ifndef CAPTIONFORGE_DECODE_H_
#define CAPTIONFORGE_DECODE_H_

#include <cstdint>
#include <span>
#include <vector>

#include "captionforge/step_model.h"
#include "captionforge/text.h"
#include "captionforge/vocabulary.h"

namespace captionforge::decode {

struct DecodeOptions {
  int max_len = kMaxCaptionTokens;
  TokenId bos = kBosId;
  TokenId eos = kEosId;
  std::vector<TokenId> banned = {kPadId, kBosId};
  // Final beam ranking divides the log-prob by the number of steps taken.
  bool length_norm = true;
};

struct Hypothesis {
  std::vector<TokenId> ids;  // emitted tokens, EOS excluded
  double logprob = 0.0;      // sum of per-step log-probabilities
  bool finished = false;     // EOS was emitted
  double score = 0.0;        // ranking score (see length_norm)

  // Tokens emitted including the EOS step.
  size_t steps() const { return ids.size() + (finished ? 1 : 0); }

  friend bool operator==(const Hypothesis&, const Hypothesis&) = default;
};

// Throws DimensionMismatchError when the feature size does not match.
Hypothesis GreedyDecode(const StepModel& model, std::span<const double> feature,
                        const DecodeOptions& options = {});

// Multinomial draw from softmax(log p / temperature) restricted to allowed
// tokens. The recorded log-prob is under the model's own distribution.
Hypothesis SampleDecode(const StepModel& model, std::span<const double> feature,
                        std::uint64_t seed, const DecodeOptions& options = {},
                        double temperature = 1.0);

// Hypotheses ranked best first. Every step extends all live hypotheses over
// the allowed tokens and keeps the `beam` best by cumulative log-prob
// (ties: parent rank, then token id). Expansions ending in EOS retire to the
// finished pool. The result is the finished pool plus the surviving live
// hypotheses, ranked by score, then by id sequence.
std::vector<Hypothesis> BeamSearch(const StepModel& model,
                                   std::span<const double> feature, int beam = 3,
                                   const DecodeOptions& options = {});

// Index drawn from `probs` (need not be normalized) using a uniform u in
// [0, 1). Zero-probability entries are never drawn.
size_t SampleIndex(std::span<const double> probs, double u);

}  // namespace captionforge::decode

#endif  // CAPTIONFORGE_DECODE_H_
