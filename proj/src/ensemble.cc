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

#include "captionforge/ensemble.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "captionforge/errors.h"

namespace captionforge::ensemble {
namespace {

constexpr double kRenormTolerance = 1e-13;

void CheckLengths(std::span<const std::vector<double>> dists,
                  std::span<const double> weights) {
  if (dists.empty()) throw InputError("fusion needs at least one distribution");
  ValidateWeights(weights, dists.size());
  for (const auto& d : dists) {
    if (d.size() != dists[0].size()) {
      throw MismatchedVocabError("member distributions differ in length: " +
                                 std::to_string(dists[0].size()) + " vs " +
                                 std::to_string(d.size()));
    }
  }
}

void Renormalize(std::vector<double>& p) {
  double sum = 0.0;
  for (double x : p) sum += x;
  if (!(sum > 0.0) || !std::isfinite(sum)) {
    throw NumericalError("fused distribution has no mass");
  }
  if (std::abs(sum - 1.0) > kRenormTolerance) {
    for (double& x : p) x /= sum;
  }
}

}  // namespace

FusionMode ParseFusionMode(std::string_view name) {
  if (name == "arithmetic" || name == "average") return FusionMode::kArithmetic;
  if (name == "geometric") return FusionMode::kGeometric;
  throw InputError("unknown fusion mode '" + std::string(name) + "'");
}

void ValidateWeights(std::span<const double> weights, size_t members) {
  if (weights.size() != members) {
    throw InvalidWeightsError("expected " + std::to_string(members) +
                              " weights, got " + std::to_string(weights.size()));
  }
  double sum = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) {
      throw InvalidWeightsError("weights must be finite and nonnegative");
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > kWeightSumTolerance) {
    throw InvalidWeightsError("weights must sum to 1, got " +
                              std::to_string(sum));
  }
}

std::vector<double> UniformWeights(size_t members) {
  return std::vector<double>(members, 1.0 / static_cast<double>(members));
}

std::vector<double> FuseStep(std::span<const std::vector<double>> dists,
                             std::span<const double> weights) {
  CheckLengths(dists, weights);
  std::vector<double> fused = dists[0];
  for (size_t k = 1; k < dists.size(); ++k) {
    if (weights[k] == 0.0) continue;
    for (size_t v = 0; v < fused.size(); ++v) {
      fused[v] += weights[k] * (dists[k][v] - dists[0][v]);
    }
  }
  for (double& x : fused) {
    if (x < 0.0) x = 0.0;
  }
  Renormalize(fused);
  return fused;
}

std::vector<double> FuseStepGeometric(std::span<const std::vector<double>> dists,
                                      std::span<const double> weights) {
  CheckLengths(dists, weights);
  const size_t n = dists[0].size();
  std::vector<double> logp(n, 0.0);
  for (size_t v = 0; v < n; ++v) {
    double acc = 0.0;
    bool zero = false;
    for (size_t k = 0; k < dists.size(); ++k) {
      if (weights[k] == 0.0) continue;
      if (dists[k][v] <= 0.0) {
        zero = true;
        break;
      }
      acc += weights[k] * std::log(dists[k][v]);
    }
    logp[v] = zero ? -std::numeric_limits<double>::infinity() : acc;
  }
  double max = -std::numeric_limits<double>::infinity();
  for (double x : logp) max = std::max(max, x);
  if (!std::isfinite(max)) throw NumericalError("fused distribution has no mass");
  std::vector<double> fused(n);
  for (size_t v = 0; v < n; ++v) fused[v] = std::exp(logp[v] - max);
  Renormalize(fused);
  return fused;
}

EnsembleSpec EnsembleSpec::Average(
    std::vector<std::shared_ptr<const decode::StepModel>> members) {
  EnsembleSpec spec;
  spec.weights = UniformWeights(members.size());
  spec.members = std::move(members);
  return spec;
}

void EnsembleSpec::Validate() const {
  if (members.empty()) throw InputError("ensemble needs at least one member");
  for (const auto& m : members) {
    if (!m) throw InputError("ensemble member is null");
  }
  ValidateWeights(weights, members.size());
  for (const auto& m : members) {
    if (m->vocab_size() != members[0]->vocab_size()) {
      throw MismatchedVocabError("ensemble members differ in vocabulary size");
    }
    if (m->feature_size() != members[0]->feature_size()) {
      throw MismatchedVocabError("ensemble members differ in feature size");
    }
  }
}

EnsembleModel::EnsembleModel(EnsembleSpec spec) : spec_(std::move(spec)) {
  spec_.Validate();
  offsets_.push_back(0);
  for (const auto& m : spec_.members) {
    offsets_.push_back(offsets_.back() + m->InitialState().size());
  }
}

int EnsembleModel::vocab_size() const { return spec_.members[0]->vocab_size(); }

int EnsembleModel::feature_size() const {
  return spec_.members[0]->feature_size();
}

decode::ModelState EnsembleModel::InitialState() const {
  decode::ModelState state;
  state.reserve(offsets_.back());
  for (const auto& m : spec_.members) {
    for (auto& s : m->InitialState()) state.push_back(std::move(s));
  }
  return state;
}

std::vector<double> EnsembleModel::NextDistribution(
    const decode::ModelState& state, TokenId prev_token,
    std::span<const double> feature, decode::ModelState& next) const {
  if (state.size() != offsets_.back()) {
    throw DimensionMismatchError("ensemble state has the wrong size");
  }
  const size_t k_members = spec_.members.size();
  std::vector<std::vector<double>> dists(k_members);
  next.assign(offsets_.back(), {});
  for (size_t k = 0; k < k_members; ++k) {
    const decode::ModelState slice(state.begin() + offsets_[k],
                                   state.begin() + offsets_[k + 1]);
    decode::ModelState member_next;
    dists[k] = spec_.members[k]->NextDistribution(slice, prev_token, feature,
                                                  member_next);
    if (member_next.size() != offsets_[k + 1] - offsets_[k]) {
      throw DimensionMismatchError("member changed its state size");
    }
    for (size_t i = 0; i < member_next.size(); ++i) {
      next[offsets_[k] + i] = std::move(member_next[i]);
    }
  }
  return spec_.mode == FusionMode::kGeometric
             ? FuseStepGeometric(dists, spec_.weights)
             : FuseStep(dists, spec_.weights);
}

std::vector<decode::Hypothesis> EnsembleBeamSearch(
    const EnsembleSpec& spec, std::span<const double> feature, int beam,
    const decode::DecodeOptions& options) {
  const EnsembleModel model(spec);
  return decode::BeamSearch(model, feature, beam, options);
}

}  // namespace captionforge::ensemble
