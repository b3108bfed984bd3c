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

// Joins reference and feature rows by id into training examples.

#ifndef CAPTIONFORGE_DATASET_H_
#define CAPTIONFORGE_DATASET_H_

#include <vector>

#include "captionforge/jsonl.h"
#include "captionforge/text.h"
#include "captionforge/trainer.h"
#include "captionforge/vocabulary.h"

namespace captionforge {

// One Caption per reference, tokenized and truncated.
std::vector<Caption> CorpusCaptions(const std::vector<ReferenceRow>& refs,
                                    Language language,
                                    int max_len = kMaxCaptionTokens);

// Every reference id must have a feature row (MismatchedIdsError).
std::vector<policy::XentExample> BuildXentExamples(
    const std::vector<ReferenceRow>& refs,
    const std::vector<FeatureRow>& features, const Vocabulary& vocab,
    Language language, int max_len = kMaxCaptionTokens);

// References are tokenized but not truncated.
std::vector<policy::ScstExample> BuildScstExamples(
    const std::vector<ReferenceRow>& refs,
    const std::vector<FeatureRow>& features, Language language);

}  // namespace captionforge

#endif  // CAPTIONFORGE_DATASET_H_
