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

// Two-phase training of the toy policy: teacher-forced cross-entropy with
// label smoothing, then self-critical policy gradient on the hybrid reward.
// Both phases are pure functions of their inputs and config.seed.

#ifndef CAPTIONFORGE_TRAINER_H_
#define CAPTIONFORGE_TRAINER_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "captionforge/adam.h"
#include "captionforge/ngram.h"
#include "captionforge/policy.h"
#include "captionforge/reward.h"
#include "captionforge/schedule.h"
#include "captionforge/vocabulary.h"

namespace captionforge::policy {

enum class RolloutMode {
  kMultinomial,
  // Sampled rollouts are replaced by the greedy decode, so every advantage
  // is zero. Diagnostic only.
  kGreedy,
};

struct TrainConfig {
  int batch_size = 64;
  double label_smoothing = 0.1;
  int epochs = 1;
  std::uint64_t seed = 0;
  LrSchedule schedule;
  // Global-norm gradient clip, policy-gradient phase only.
  double clip_norm = 5.0;
  int max_len = kMaxCaptionTokens;
  RolloutMode rollout = RolloutMode::kMultinomial;

  // Throws std::invalid_argument.
  void Validate() const;
};

struct XentExample {
  std::vector<TokenId> ids;  // BOS ... EOS
  Eigen::VectorXd feature;
};

struct XentResult {
  PolicyParams params;
  std::vector<double> epoch_loss;  // mean per-token loss seen during each epoch
};

// Mini-batch Adam on the label-smoothed loss. Each epoch visits the
// examples in a seeded shuffled order. Throws EmptyCorpusError for no
// examples and NumericalError if the loss or parameters become non-finite.
XentResult TrainXent(PolicyParams params, std::span<const XentExample> examples,
                     const TrainConfig& config);

// Mean per-token label-smoothed loss under `params`.
double MeanXentLoss(const PolicyParams& params,
                    std::span<const XentExample> examples, double epsilon);

struct ScstExample {
  std::string id;
  Eigen::VectorXd feature;
  metrics::RefSet refs;
};

struct ScstResult {
  PolicyParams params;
  double initial_reward = 0.0;     // mean greedy reward before training
  std::vector<double> epoch_reward;  // mean greedy reward after each epoch
  std::vector<double> epoch_sample_reward;  // mean reward of the rollouts
  std::vector<double> epoch_active;  // fraction of nonzero advantages
};

// Per example: one multinomial rollout and one greedy rollout, advantage
// r(sample) - r(greedy), REINFORCE gradient of the sampled sequence.
// Gradients are averaged over each mini-batch, clipped, then applied with
// one Adam step.
ScstResult TrainScst(PolicyParams params, std::span<const ScstExample> examples,
                     const Vocabulary& vocab,
                     const reward::HybridWeights& weights,
                     const reward::RewardContext& ctx,
                     const TrainConfig& config);

double MeanGreedyReward(const PolicyParams& params,
                        std::span<const ScstExample> examples,
                        const Vocabulary& vocab,
                        const reward::HybridWeights& weights,
                        const reward::RewardContext& ctx, int max_len);

}  // namespace captionforge::policy

#endif  // CAPTIONFORGE_TRAINER_H_
