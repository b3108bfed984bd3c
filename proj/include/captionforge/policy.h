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

// Toy captioning policy with hand-written gradients.
//
// One additive recurrence, column-vector convention:
//
//   h_t      = tanh(recur^T h_{t-1} + token_embed[x_t]^T + feature_proj^T f)
//   logits_t = out_weight^T h_t + out_bias
//
// with h_0 = 0 and x_1 = BOS. It stands in for a real encoder-decoder so
// that the reward, decoding and ensemble code can be exercised end to end.

#ifndef CAPTIONFORGE_POLICY_H_
#define CAPTIONFORGE_POLICY_H_

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "captionforge/step_model.h"
#include "captionforge/vocabulary.h"

namespace captionforge::policy {

struct PolicyParams {
  Eigen::MatrixXd token_embed;   // |V| x d
  Eigen::MatrixXd feature_proj;  // d_f x d
  Eigen::MatrixXd recur;         // d x d
  Eigen::MatrixXd out_weight;    // d x |V|
  Eigen::VectorXd out_bias;      // |V|

  static PolicyParams Zeros(int vocab_size, int hidden_size, int feature_size);
  // Every entry uniform in [-scale, scale], drawn in a fixed tensor order.
  static PolicyParams RandomUniform(int vocab_size, int hidden_size,
                                    int feature_size, std::uint64_t seed,
                                    double scale = 0.08);

  int vocab_size() const { return static_cast<int>(out_bias.size()); }
  int hidden_size() const { return static_cast<int>(recur.rows()); }
  int feature_size() const { return static_cast<int>(feature_proj.rows()); }

  // Throws DimensionMismatchError if shapes disagree.
  void CheckConsistent() const;
  bool AllFinite() const;
  bool SameShape(const PolicyParams& other) const;
  // Zero tensors with this shape.
  PolicyParams ZerosLike() const;

  // Flat views of the five tensors in declaration order.
  std::vector<std::span<double>> Tensors();
  std::vector<std::span<const double>> Tensors() const;

  double SquaredNorm() const;
  PolicyParams& operator+=(const PolicyParams& other);
  PolicyParams& operator*=(double s);

  friend bool operator==(const PolicyParams& a, const PolicyParams& b);
};

// Gradients share the parameter layout.
using Gradients = PolicyParams;

struct StepResult {
  Eigen::VectorXd logits;
  Eigen::VectorXd state;
};

// Throws DimensionMismatchError for a wrong state or feature size and
// IdOutOfRangeError for a bad token.
StepResult StepLogits(const PolicyParams& params, const Eigen::VectorXd& state,
                      TokenId prev, std::span<const double> feature);

Eigen::VectorXd Softmax(const Eigen::VectorXd& logits);
Eigen::VectorXd LogSoftmax(const Eigen::VectorXd& logits);

struct XentLoss {
  double loss = 0.0;
  Eigen::VectorXd grad_logits;
};

// Smoothed target q = (1 - eps) onehot(gold) + eps / |V| over every class.
// loss = -sum q log softmax(logits), grad = softmax(logits) - q.
XentLoss LabelSmoothedXent(const Eigen::VectorXd& logits, TokenId gold,
                           double epsilon = 0.1);

// Gradient of -advantage * sum_t log p(sampled_t) with respect to each
// step's logits: advantage * (softmax(logits_t) - onehot(sampled_t)).
// Throws LengthMismatchError when the sequences differ in length.
std::vector<Eigen::VectorXd> ReinforceGrad(
    std::span<const Eigen::VectorXd> logits, std::span<const TokenId> sampled,
    double advantage);

// Teacher-forced unroll over `inputs` (starting with BOS).
struct SequenceTrace {
  Eigen::VectorXd feature;
  std::vector<TokenId> inputs;
  std::vector<Eigen::VectorXd> states;  // h_0 .. h_T
  std::vector<Eigen::VectorXd> logits;  // one per input
};

SequenceTrace Forward(const PolicyParams& params,
                      std::span<const double> feature,
                      std::span<const TokenId> inputs);

// Backpropagation through time of the given per-step logit gradients;
// adds the parameter gradient into `grads`.
void BackwardAccumulate(const PolicyParams& params, const SequenceTrace& trace,
                        std::span<const Eigen::VectorXd> grad_logits,
                        Gradients& grads);

Gradients Backward(const PolicyParams& params, const SequenceTrace& trace,
                   std::span<const Eigen::VectorXd> grad_logits);

// Scales `grads` so its global L2 norm is at most `max_norm`; returns the
// norm before clipping.
double ClipGlobalNorm(Gradients& grads, double max_norm);

// StepModel adapter. NextDistribution returns softmax(logits).
class PolicyStepModel : public decode::StepModel {
 public:
  explicit PolicyStepModel(std::shared_ptr<const PolicyParams> params);
  // Non-owning; `params` must outlive the model.
  static PolicyStepModel View(const PolicyParams& params);

  int vocab_size() const override { return params_->vocab_size(); }
  int feature_size() const override { return params_->feature_size(); }
  decode::ModelState InitialState() const override;
  std::vector<double> NextDistribution(const decode::ModelState& state,
                                       TokenId prev_token,
                                       std::span<const double> feature,
                                       decode::ModelState& next) const override;

  const PolicyParams& params() const { return *params_; }

 private:
  std::shared_ptr<const PolicyParams> params_;
};

}  // namespace captionforge::policy

#endif  // CAPTIONFORGE_POLICY_H_
