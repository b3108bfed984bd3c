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

// Bundled synthetic dataset: feature vectors encoding a (subject, action)
// pair plus noise, with templated English and pre-segmented Chinese
// references. Fully determined by the seed.

#ifndef CAPTIONFORGE_FIXTURE_H_
#define CAPTIONFORGE_FIXTURE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "captionforge/jsonl.h"
#include "captionforge/text.h"

namespace captionforge::fixture {

inline constexpr std::uint64_t kDefaultSeed = 20200612;
inline constexpr int kDefaultSize = 50;
inline constexpr int kSubjects = 5;
inline constexpr int kActions = 5;
inline constexpr int kNoiseDims = 6;
inline constexpr int kFeatureSize = kSubjects + kActions + kNoiseDims;

struct Example {
  std::string id;
  int subject = 0;
  int action = 0;
  Eigen::VectorXd feature;
  std::vector<std::string> refs_en;
  std::vector<std::string> refs_zh;
};

std::vector<Example> Make(int size = kDefaultSize,
                          std::uint64_t seed = kDefaultSeed);

std::vector<FeatureRow> Features(const std::vector<Example>& examples);
std::vector<ReferenceRow> References(const std::vector<Example>& examples,
                                     Language language);

// Writes features.jsonl, refs.en.jsonl and refs.zh.jsonl into `dir`.
void Write(const std::vector<Example>& examples, const std::string& dir);

}  // namespace captionforge::fixture

#endif  // CAPTIONFORGE_FIXTURE_H_
