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

// Per-step fusion of token distributions from several step models sharing
// one vocabulary, and beam search over the fused model.

#ifndef CAPTIONFORGE_ENSEMBLE_H_
#define CAPTIONFORGE_ENSEMBLE_H_

#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "captionforge/decode.h"
#include "captionforge/step_model.h"

namespace captionforge::ensemble {

enum class FusionMode {
  kArithmetic,  // weighted mean of probabilities
  kGeometric,   // normalized weighted mean of log-probabilities
};

// Parses "arithmetic"/"average" or "geometric". Throws InputError.
FusionMode ParseFusionMode(std::string_view name);

constexpr double kWeightSumTolerance = 1e-9;

// Throws InvalidWeightsError unless weights are finite, nonnegative, one
// per member and sum to 1 within kWeightSumTolerance.
void ValidateWeights(std::span<const double> weights, size_t members);

std::vector<double> UniformWeights(size_t members);

// Convex combination sum_i w_i p_i, evaluated as
// p_1 + sum_{i>1} w_i (p_i - p_1) so that identical members and degenerate
// weights reproduce p_1 exactly. Renormalized when the sum drifts from 1.
// Throws MismatchedVocabError on length disagreement.
std::vector<double> FuseStep(std::span<const std::vector<double>> dists,
                             std::span<const double> weights);

std::vector<double> FuseStepGeometric(std::span<const std::vector<double>> dists,
                                      std::span<const double> weights);

struct EnsembleSpec {
  std::vector<std::shared_ptr<const decode::StepModel>> members;
  std::vector<double> weights;
  FusionMode mode = FusionMode::kArithmetic;

  static EnsembleSpec Average(
      std::vector<std::shared_ptr<const decode::StepModel>> members);

  // Throws InputError for no members, InvalidWeightsError, and
  // MismatchedVocabError when vocabulary or feature sizes differ.
  void Validate() const;
};

// The fused model. State is the concatenation of every member's state.
class EnsembleModel : public decode::StepModel {
 public:
  explicit EnsembleModel(EnsembleSpec spec);

  int vocab_size() const override;
  int feature_size() const override;
  decode::ModelState InitialState() const override;
  std::vector<double> NextDistribution(const decode::ModelState& state,
                                       TokenId prev_token,
                                       std::span<const double> feature,
                                       decode::ModelState& next) const override;

  const EnsembleSpec& spec() const { return spec_; }

 private:
  EnsembleSpec spec_;
  std::vector<size_t> offsets_;  // member k owns [offsets_[k], offsets_[k+1])
};

std::vector<decode::Hypothesis> EnsembleBeamSearch(
    const EnsembleSpec& spec, std::span<const double> feature, int beam = 3,
    const decode::DecodeOptions& options = {});

}  // namespace captionforge::ensemble

#endif  // CAPTIONFORGE_ENSEMBLE_H_
