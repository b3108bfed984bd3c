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

#ifndef CAPTIONFORGE_ADAM_H_
#define CAPTIONFORGE_ADAM_H_

#include <cstdint>

#include "captionforge/policy.h"

namespace captionforge::policy {

struct AdamState {
  PolicyParams first_moment;
  PolicyParams second_moment;
  std::int64_t step = 0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  static AdamState ZerosLike(const PolicyParams& params);
};

// Bias-corrected Adam step; increments state.step. Throws
// DimensionMismatchError if the shapes of params, grads and state differ.
void AdamUpdate(PolicyParams& params, const Gradients& grads, AdamState& state,
                double lr);

}  // namespace captionforge::policy

#endif  // CAPTIONFORGE_ADAM_H_
