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

#include "captionforge/trainer.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "captionforge/decode.h"
#include "captionforge/errors.h"
#include "captionforge/random.h"

namespace captionforge::policy {
namespace {

// Stream tags for DeriveSeed.
constexpr std::uint64_t kShuffleStream = 1;
constexpr std::uint64_t kSampleStream = 2;

std::vector<size_t> ShuffledOrder(size_t n, std::uint64_t seed) {
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  for (size_t i = n; i > 1; --i) {
    const auto j = static_cast<size_t>(rng.UniformInt(i));
    std::swap(order[i - 1], order[j]);
  }
  return order;
}

void CheckFinite(const PolicyParams& params, const char* phase) {
  if (!params.AllFinite()) {
    throw NumericalError(std::string(phase) +
                         ": parameters became non-finite");
  }
}

std::span<const double> FeatureSpan(const Eigen::VectorXd& f) {
  return {f.data(), static_cast<size_t>(f.size())};
}

decode::DecodeOptions RolloutOptions(int max_len) {
  decode::DecodeOptions options;
  options.max_len = max_len;
  return options;
}

// The emitted sequence (EOS included when produced) and the teacher-forced
// inputs that reproduce it.
struct Rollout {
  std::vector<TokenId> inputs;
  std::vector<TokenId> targets;
  std::vector<TokenId> caption;
};

Rollout ToRollout(const decode::Hypothesis& h) {
  Rollout r;
  r.caption = h.ids;
  r.targets = h.ids;
  if (h.finished) r.targets.push_back(kEosId);
  r.inputs.push_back(kBosId);
  for (size_t t = 0; t + 1 < r.targets.size(); ++t) {
    r.inputs.push_back(r.targets[t]);
  }
  return r;
}

metrics::Tokens ToTokens(const std::vector<TokenId>& ids,
                         const Vocabulary& vocab) {
  return DecodeIds(ids, vocab);
}

}  // namespace

void TrainConfig::Validate() const {
  if (batch_size < 1) throw std::invalid_argument("batch_size must be >= 1");
  if (!(label_smoothing >= 0.0 && label_smoothing < 1.0)) {
    throw std::invalid_argument("label_smoothing must be in [0, 1)");
  }
  if (epochs < 0) throw std::invalid_argument("epochs must be >= 0");
  if (!(clip_norm > 0.0)) throw std::invalid_argument("clip_norm must be > 0");
  if (max_len < 1) throw std::invalid_argument("max_len must be >= 1");
}

double MeanXentLoss(const PolicyParams& params,
                    std::span<const XentExample> examples, double epsilon) {
  double total = 0.0;
  long tokens = 0;
  for (const XentExample& ex : examples) {
    if (ex.ids.size() < 2) continue;
    const std::span<const TokenId> ids(ex.ids);
    const SequenceTrace trace =
        Forward(params, FeatureSpan(ex.feature), ids.first(ids.size() - 1));
    for (size_t t = 0; t + 1 < ids.size(); ++t) {
      total += LabelSmoothedXent(trace.logits[t], ids[t + 1], epsilon).loss;
      ++tokens;
    }
  }
  return tokens > 0 ? total / static_cast<double>(tokens) : 0.0;
}

XentResult TrainXent(PolicyParams params, std::span<const XentExample> examples,
                     const TrainConfig& config) {
  config.Validate();
  params.CheckConsistent();
  if (examples.empty()) throw EmptyCorpusError("no cross-entropy examples");

  XentResult result;
  AdamState adam = AdamState::ZerosLike(params);
  const auto batch = static_cast<size_t>(config.batch_size);
  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    const double lr = config.schedule(epoch);
    const std::vector<size_t> order = ShuffledOrder(
        examples.size(), DeriveSeed(config.seed, {kShuffleStream,
                                                  static_cast<std::uint64_t>(epoch)}));
    double epoch_loss = 0.0;
    long epoch_tokens = 0;
    for (size_t start = 0; start < order.size(); start += batch) {
      const size_t end = std::min(order.size(), start + batch);
      long batch_tokens = 0;
      for (size_t k = start; k < end; ++k) {
        const auto n = examples[order[k]].ids.size();
        if (n >= 2) batch_tokens += static_cast<long>(n - 1);
      }
      if (batch_tokens == 0) continue;
      const double inv = 1.0 / static_cast<double>(batch_tokens);

      Gradients grads = params.ZerosLike();
      for (size_t k = start; k < end; ++k) {
        const XentExample& ex = examples[order[k]];
        if (ex.ids.size() < 2) continue;
        const std::span<const TokenId> ids(ex.ids);
        const SequenceTrace trace =
            Forward(params, FeatureSpan(ex.feature), ids.first(ids.size() - 1));
        std::vector<Eigen::VectorXd> dlogits;
        dlogits.reserve(trace.logits.size());
        for (size_t t = 0; t + 1 < ids.size(); ++t) {
          XentLoss l = LabelSmoothedXent(trace.logits[t], ids[t + 1],
                                         config.label_smoothing);
          epoch_loss += l.loss;
          dlogits.push_back(l.grad_logits * inv);
        }
        BackwardAccumulate(params, trace, dlogits, grads);
      }
      epoch_tokens += batch_tokens;
      AdamUpdate(params, grads, adam, lr);
    }
    const double mean = epoch_tokens > 0 ? epoch_loss / epoch_tokens : 0.0;
    if (!std::isfinite(mean)) {
      throw NumericalError("cross-entropy loss became non-finite in epoch " +
                           std::to_string(epoch));
    }
    CheckFinite(params, "cross-entropy training");
    result.epoch_loss.push_back(mean);
  }
  result.params = std::move(params);
  return result;
}

double MeanGreedyReward(const PolicyParams& params,
                        std::span<const ScstExample> examples,
                        const Vocabulary& vocab,
                        const reward::HybridWeights& weights,
                        const reward::RewardContext& ctx, int max_len) {
  if (examples.empty()) return 0.0;
  const PolicyStepModel model = PolicyStepModel::View(params);
  const decode::DecodeOptions options = RolloutOptions(max_len);
  double total = 0.0;
  for (const ScstExample& ex : examples) {
    const decode::Hypothesis h =
        decode::GreedyDecode(model, FeatureSpan(ex.feature), options);
    total += reward::HybridReward(ToTokens(h.ids, vocab), ex.refs, weights, ctx);
  }
  return total / static_cast<double>(examples.size());
}

ScstResult TrainScst(PolicyParams params, std::span<const ScstExample> examples,
                     const Vocabulary& vocab,
                     const reward::HybridWeights& weights,
                     const reward::RewardContext& ctx,
                     const TrainConfig& config) {
  config.Validate();
  weights.Validate();
  params.CheckConsistent();
  if (examples.empty()) throw EmptyCorpusError("no policy-gradient examples");
  if (params.vocab_size() != vocab.size()) {
    throw MismatchedVocabError("policy and vocabulary sizes differ");
  }

  ScstResult result;
  result.initial_reward =
      MeanGreedyReward(params, examples, vocab, weights, ctx, config.max_len);
  AdamState adam = AdamState::ZerosLike(params);
  const decode::DecodeOptions options = RolloutOptions(config.max_len);
  const auto batch = static_cast<size_t>(config.batch_size);

  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    const double lr = config.schedule(epoch);
    const auto epoch_tag = static_cast<std::uint64_t>(epoch);
    const std::vector<size_t> order = ShuffledOrder(
        examples.size(), DeriveSeed(config.seed, {kShuffleStream, epoch_tag}));
    double sample_total = 0.0;
    size_t active = 0;
    for (size_t start = 0; start < order.size(); start += batch) {
      const size_t end = std::min(order.size(), start + batch);
      const PolicyStepModel model = PolicyStepModel::View(params);
      Gradients grads = params.ZerosLike();
      bool any_signal = false;
      for (size_t k = start; k < end; ++k) {
        const size_t index = order[k];
        const ScstExample& ex = examples[index];
        const auto feature = FeatureSpan(ex.feature);
        const decode::Hypothesis greedy =
            decode::GreedyDecode(model, feature, options);
        const decode::Hypothesis sampled =
            config.rollout == RolloutMode::kGreedy
                ? greedy
                : decode::SampleDecode(
                      model, feature,
                      DeriveSeed(config.seed, {kSampleStream, epoch_tag,
                                               static_cast<std::uint64_t>(index)}),
                      options);
        const double sample_reward = reward::HybridReward(
            ToTokens(sampled.ids, vocab), ex.refs, weights, ctx);
        const double advantage =
            sample_reward - reward::HybridReward(ToTokens(greedy.ids, vocab),
                                                 ex.refs, weights, ctx);
        sample_total += sample_reward;
        if (!std::isfinite(advantage)) {
          throw NumericalError("non-finite advantage for example '" + ex.id +
                               "'");
        }
        if (advantage == 0.0) continue;
        ++active;
        const Rollout rollout = ToRollout(sampled);
        if (rollout.targets.empty()) continue;
        const SequenceTrace trace = Forward(params, feature, rollout.inputs);
        const std::vector<Eigen::VectorXd> dlogits =
            ReinforceGrad(trace.logits, rollout.targets, advantage);
        BackwardAccumulate(params, trace, dlogits, grads);
        any_signal = true;
      }
      if (!any_signal) continue;
      grads *= 1.0 / static_cast<double>(end - start);
      ClipGlobalNorm(grads, config.clip_norm);
      AdamUpdate(params, grads, adam, lr);
      CheckFinite(params, "policy-gradient training");
    }
    const auto n = static_cast<double>(examples.size());
    result.epoch_sample_reward.push_back(sample_total / n);
    result.epoch_active.push_back(static_cast<double>(active) / n);
    result.epoch_reward.push_back(
        MeanGreedyReward(params, examples, vocab, weights, ctx, config.max_len));
  }
  result.params = std::move(params);
  return result;
}

}  // namespace captionforge::policy
