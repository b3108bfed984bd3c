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

#include "captionforge/adam.h"

#include <cmath>

#include "captionforge/errors.h"

namespace captionforge::policy {

AdamState AdamState::ZerosLike(const PolicyParams& params) {
  AdamState s;
  s.first_moment = params.ZerosLike();
  s.second_moment = params.ZerosLike();
  return s;
}

void AdamUpdate(PolicyParams& params, const Gradients& grads, AdamState& state,
                double lr) {
  if (!params.SameShape(grads) || !params.SameShape(state.first_moment) ||
      !params.SameShape(state.second_moment)) {
    throw DimensionMismatchError("Adam: parameter, gradient and moment shapes differ");
  }
  ++state.step;
  const double t = static_cast<double>(state.step);
  const double correct1 = 1.0 - std::pow(state.beta1, t);
  const double correct2 = 1.0 - std::pow(state.beta2, t);

  auto p_tensors = params.Tensors();
  auto g_tensors = grads.Tensors();
  auto m_tensors = state.first_moment.Tensors();
  auto v_tensors = state.second_moment.Tensors();
  for (size_t k = 0; k < p_tensors.size(); ++k) {
    std::span<double> p = p_tensors[k];
    std::span<const double> g = g_tensors[k];
    std::span<double> m = m_tensors[k];
    std::span<double> v = v_tensors[k];
    for (size_t i = 0; i < p.size(); ++i) {
      m[i] = state.beta1 * m[i] + (1.0 - state.beta1) * g[i];
      v[i] = state.beta2 * v[i] + (1.0 - state.beta2) * g[i] * g[i];
      const double m_hat = m[i] / correct1;
      const double v_hat = v[i] / correct2;
      p[i] -= lr * m_hat / (std::sqrt(v_hat) + state.epsilon);
    }
  }
}

}  // namespace captionforge::policy
