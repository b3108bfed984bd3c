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

#include "captionforge/policy.h"

#include <cmath>
#include <stdexcept>
#include <string>

#include "captionforge/errors.h"
#include "captionforge/random.h"

namespace captionforge::policy {
namespace {

void CheckDims(int vocab_size, int hidden_size, int feature_size) {
  if (vocab_size < 1 || hidden_size < 1 || feature_size < 1) {
    throw DimensionMismatchError("policy dimensions must all be >= 1");
  }
}

std::string Shape(const Eigen::MatrixXd& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

Eigen::Map<const Eigen::VectorXd> AsVector(std::span<const double> v) {
  return {v.data(), static_cast<Eigen::Index>(v.size())};
}

}  // namespace

PolicyParams PolicyParams::Zeros(int vocab_size, int hidden_size,
                                 int feature_size) {
  CheckDims(vocab_size, hidden_size, feature_size);
  PolicyParams p;
  p.token_embed = Eigen::MatrixXd::Zero(vocab_size, hidden_size);
  p.feature_proj = Eigen::MatrixXd::Zero(feature_size, hidden_size);
  p.recur = Eigen::MatrixXd::Zero(hidden_size, hidden_size);
  p.out_weight = Eigen::MatrixXd::Zero(hidden_size, vocab_size);
  p.out_bias = Eigen::VectorXd::Zero(vocab_size);
  return p;
}

PolicyParams PolicyParams::RandomUniform(int vocab_size, int hidden_size,
                                         int feature_size, std::uint64_t seed,
                                         double scale) {
  PolicyParams p = Zeros(vocab_size, hidden_size, feature_size);
  Rng rng(seed);
  for (std::span<double> t : p.Tensors()) {
    for (double& x : t) x = rng.Uniform(-scale, scale);
  }
  return p;
}

void PolicyParams::CheckConsistent() const {
  const auto v = out_bias.size();
  const auto d = recur.rows();
  const auto df = feature_proj.rows();
  if (v < 1 || d < 1 || df < 1 || recur.cols() != d ||
      token_embed.rows() != v || token_embed.cols() != d ||
      feature_proj.cols() != d || out_weight.rows() != d ||
      out_weight.cols() != v) {
    throw DimensionMismatchError(
        "inconsistent policy shapes: embed " + Shape(token_embed) + ", proj " +
        Shape(feature_proj) + ", recur " + Shape(recur) + ", out " +
        Shape(out_weight) + ", bias " + std::to_string(v));
  }
}

bool PolicyParams::AllFinite() const {
  for (std::span<const double> t : Tensors()) {
    for (double x : t) {
      if (!std::isfinite(x)) return false;
    }
  }
  return true;
}

bool PolicyParams::SameShape(const PolicyParams& o) const {
  return token_embed.rows() == o.token_embed.rows() &&
         token_embed.cols() == o.token_embed.cols() &&
         feature_proj.rows() == o.feature_proj.rows() &&
         feature_proj.cols() == o.feature_proj.cols() &&
         recur.rows() == o.recur.rows() && recur.cols() == o.recur.cols() &&
         out_weight.rows() == o.out_weight.rows() &&
         out_weight.cols() == o.out_weight.cols() &&
         out_bias.size() == o.out_bias.size();
}

PolicyParams PolicyParams::ZerosLike() const {
  return Zeros(vocab_size(), hidden_size(), feature_size());
}

std::vector<std::span<double>> PolicyParams::Tensors() {
  auto span = [](auto& m) {
    return std::span<double>(m.data(), static_cast<size_t>(m.size()));
  };
  return {span(token_embed), span(feature_proj), span(recur), span(out_weight),
          span(out_bias)};
}

std::vector<std::span<const double>> PolicyParams::Tensors() const {
  auto span = [](const auto& m) {
    return std::span<const double>(m.data(), static_cast<size_t>(m.size()));
  };
  return {span(token_embed), span(feature_proj), span(recur), span(out_weight),
          span(out_bias)};
}

double PolicyParams::SquaredNorm() const {
  return token_embed.squaredNorm() + feature_proj.squaredNorm() +
         recur.squaredNorm() + out_weight.squaredNorm() +
         out_bias.squaredNorm();
}

PolicyParams& PolicyParams::operator+=(const PolicyParams& o) {
  if (!SameShape(o)) throw DimensionMismatchError("parameter shapes differ");
  token_embed += o.token_embed;
  feature_proj += o.feature_proj;
  recur += o.recur;
  out_weight += o.out_weight;
  out_bias += o.out_bias;
  return *this;
}

PolicyParams& PolicyParams::operator*=(double s) {
  token_embed *= s;
  feature_proj *= s;
  recur *= s;
  out_weight *= s;
  out_bias *= s;
  return *this;
}

bool operator==(const PolicyParams& a, const PolicyParams& b) {
  return a.SameShape(b) && a.token_embed == b.token_embed &&
         a.feature_proj == b.feature_proj && a.recur == b.recur &&
         a.out_weight == b.out_weight && a.out_bias == b.out_bias;
}

StepResult StepLogits(const PolicyParams& params, const Eigen::VectorXd& state,
                      TokenId prev, std::span<const double> feature) {
  if (state.size() != params.hidden_size()) {
    throw DimensionMismatchError("state has size " +
                                 std::to_string(state.size()) + ", expected " +
                                 std::to_string(params.hidden_size()));
  }
  if (static_cast<int>(feature.size()) != params.feature_size()) {
    throw DimensionMismatchError(
        "feature has size " + std::to_string(feature.size()) + ", expected " +
        std::to_string(params.feature_size()));
  }
  if (prev < 0 || prev >= params.vocab_size()) {
    throw IdOutOfRangeError("token id " + std::to_string(prev) +
                            " outside the policy vocabulary");
  }
  StepResult out;
  const Eigen::VectorXd pre =
      params.recur.transpose() * state +
      params.token_embed.row(prev).transpose() +
      params.feature_proj.transpose() * AsVector(feature);
  out.state = pre.array().tanh().matrix();
  out.logits = params.out_weight.transpose() * out.state + params.out_bias;
  return out;
}

Eigen::VectorXd Softmax(const Eigen::VectorXd& logits) {
  const Eigen::ArrayXd e = (logits.array() - logits.maxCoeff()).exp();
  return (e / e.sum()).matrix();
}

Eigen::VectorXd LogSoftmax(const Eigen::VectorXd& logits) {
  const double m = logits.maxCoeff();
  const double lse = m + std::log((logits.array() - m).exp().sum());
  return (logits.array() - lse).matrix();
}

XentLoss LabelSmoothedXent(const Eigen::VectorXd& logits, TokenId gold,
                           double epsilon) {
  if (!(epsilon >= 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("label smoothing must be in [0, 1)");
  }
  const auto v = logits.size();
  if (gold < 0 || gold >= v) {
    throw IdOutOfRangeError("gold id " + std::to_string(gold) +
                            " outside logits of size " + std::to_string(v));
  }
  Eigen::VectorXd q =
      Eigen::VectorXd::Constant(v, epsilon / static_cast<double>(v));
  q[gold] += 1.0 - epsilon;
  XentLoss out;
  out.loss = -q.dot(LogSoftmax(logits));
  out.grad_logits = Softmax(logits) - q;
  return out;
}

std::vector<Eigen::VectorXd> ReinforceGrad(
    std::span<const Eigen::VectorXd> logits, std::span<const TokenId> sampled,
    double advantage) {
  if (logits.size() != sampled.size()) {
    throw LengthMismatchError(std::to_string(logits.size()) +
                              " logit vectors for " +
                              std::to_string(sampled.size()) + " tokens");
  }
  std::vector<Eigen::VectorXd> grads;
  grads.reserve(logits.size());
  for (size_t t = 0; t < logits.size(); ++t) {
    if (sampled[t] < 0 || sampled[t] >= logits[t].size()) {
      throw IdOutOfRangeError("sampled id outside the vocabulary");
    }
    Eigen::VectorXd g = Softmax(logits[t]);
    g[sampled[t]] -= 1.0;
    grads.push_back(advantage * g);
  }
  return grads;
}

SequenceTrace Forward(const PolicyParams& params,
                      std::span<const double> feature,
                      std::span<const TokenId> inputs) {
  SequenceTrace trace;
  trace.feature = AsVector(feature);
  trace.inputs.assign(inputs.begin(), inputs.end());
  trace.states.reserve(inputs.size() + 1);
  trace.logits.reserve(inputs.size());
  trace.states.push_back(Eigen::VectorXd::Zero(params.hidden_size()));
  for (TokenId x : inputs) {
    StepResult step = StepLogits(params, trace.states.back(), x, feature);
    trace.states.push_back(std::move(step.state));
    trace.logits.push_back(std::move(step.logits));
  }
  return trace;
}

void BackwardAccumulate(const PolicyParams& params, const SequenceTrace& trace,
                        std::span<const Eigen::VectorXd> grad_logits,
                        Gradients& grads) {
  const size_t steps = trace.inputs.size();
  if (grad_logits.size() != steps) {
    throw LengthMismatchError("gradient count does not match the trace");
  }
  if (!grads.SameShape(params)) {
    throw DimensionMismatchError("gradient shapes differ from parameters");
  }
  Eigen::VectorXd dh_next = Eigen::VectorXd::Zero(params.hidden_size());
  Eigen::VectorXd dpre_sum = Eigen::VectorXd::Zero(params.hidden_size());
  for (size_t t = steps; t-- > 0;) {
    const Eigen::VectorXd& h = trace.states[t + 1];
    const Eigen::VectorXd& h_prev = trace.states[t];
    const Eigen::VectorXd& dz = grad_logits[t];
    grads.out_weight.noalias() += h * dz.transpose();
    grads.out_bias += dz;
    const Eigen::VectorXd dh = params.out_weight * dz + dh_next;
    const Eigen::VectorXd dpre =
        (dh.array() * (1.0 - h.array().square())).matrix();
    grads.recur.noalias() += h_prev * dpre.transpose();
    grads.token_embed.row(trace.inputs[t]) += dpre.transpose();
    dpre_sum += dpre;
    dh_next = params.recur * dpre;
  }
  grads.feature_proj.noalias() += trace.feature * dpre_sum.transpose();
}

Gradients Backward(const PolicyParams& params, const SequenceTrace& trace,
                   std::span<const Eigen::VectorXd> grad_logits) {
  Gradients grads = params.ZerosLike();
  BackwardAccumulate(params, trace, grad_logits, grads);
  return grads;
}

double ClipGlobalNorm(Gradients& grads, double max_norm) {
  const double norm = std::sqrt(grads.SquaredNorm());
  if (norm > max_norm && norm > 0.0) grads *= max_norm / norm;
  return norm;
}

PolicyStepModel::PolicyStepModel(std::shared_ptr<const PolicyParams> params)
    : params_(std::move(params)) {
  if (!params_) throw std::invalid_argument("null policy parameters");
  params_->CheckConsistent();
}

PolicyStepModel PolicyStepModel::View(const PolicyParams& params) {
  return PolicyStepModel(
      std::shared_ptr<const PolicyParams>(&params, [](const PolicyParams*) {}));
}

decode::ModelState PolicyStepModel::InitialState() const {
  return {Eigen::VectorXd::Zero(params_->hidden_size())};
}

std::vector<double> PolicyStepModel::NextDistribution(
    const decode::ModelState& state, TokenId prev_token,
    std::span<const double> feature, decode::ModelState& next) const {
  if (state.size() != 1) {
    throw DimensionMismatchError("policy state must have exactly one part");
  }
  StepResult step = StepLogits(*params_, state[0], prev_token, feature);
  if (!step.logits.allFinite()) {
    throw NumericalError("policy produced non-finite logits");
  }
  const Eigen::VectorXd probs = Softmax(step.logits);
  next.assign(1, std::move(step.state));
  return {probs.data(), probs.data() + probs.size()};
}

}  // namespace captionforge::policy
