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

#ifndef CAPTIONFORGE_STEP_MODEL_H_
#define CAPTIONFORGE_STEP_MODEL_H_

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "captionforge/vocabulary.h"

namespace captionforge::decode {

// Opaque recurrent state. Single models use one part; an ensemble keeps one
// slice per member.
using ModelState = std::vector<Eigen::VectorXd>;

// Autoregressive next-token model. Implementations must be deterministic
// and safe to call concurrently from several threads.
class StepModel {
 public:
  virtual ~StepModel() = default;

  virtual int vocab_size() const = 0;
  virtual int feature_size() const = 0;
  virtual ModelState InitialState() const = 0;

  // Probability distribution over the vocabulary for the token following
  // `prev_token`; writes the advanced state to `next_state`.
  virtual std::vector<double> NextDistribution(
      const ModelState& state, TokenId prev_token,
      std::span<const double> feature, ModelState& next_state) const = 0;
};

}  // namespace captionforge::decode

#endif  // CAPTIONFORGE_STEP_MODEL_H_
