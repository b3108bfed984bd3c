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

#ifndef CAPTIONFORGE_ROUGE_H_
#define CAPTIONFORGE_ROUGE_H_

#include <span>
#include <string>

#include "captionforge/ngram.h"

namespace captionforge::metrics {

inline constexpr double kRougeBeta = 1.2;

size_t LcsLength(std::span<const std::string> a, std::span<const std::string> b);

// LCS F-measure (1 + b^2) P R / (R + b^2 P), maximised over references.
// Zero when the candidate or the reference is empty, or the LCS is empty.
// Throws EmptyReferenceSetError when `refs` is empty.
double RougeL(const Tokens& cand, const RefSet& refs, double beta = kRougeBeta);

}  // namespace captionforge::metrics

#endif  // CAPTIONFORGE_ROUGE_H_
