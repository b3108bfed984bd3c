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

// Policy checkpoints as a single JSON document:
//
//   {
//     "format": "captionforge-checkpoint",
//     "version": 1,
//     "language": "en" | "zh",
//     "dims": {"vocab": V, "hidden": d, "feature": d_f},
//     "vocabulary": {"min_count": m, "tokens": [...]},
//     "tensors": {
//       "token_embed":  [V * d],     row-major V x d
//       "feature_proj": [d_f * d],   row-major d_f x d
//       "recur":        [d * d],     row-major d x d
//       "out_weight":   [d * V],     row-major d x V
//       "out_bias":     [V]
//     }
//   }
//
// Doubles are written with round-trip precision, so Save then Load is exact.

#ifndef CAPTIONFORGE_CHECKPOINT_H_
#define CAPTIONFORGE_CHECKPOINT_H_

#include <string>

#include "json.hpp"

#include "captionforge/policy.h"
#include "captionforge/text.h"
#include "captionforge/vocabulary.h"

namespace captionforge {

inline constexpr const char* kCheckpointFormat = "captionforge-checkpoint";
inline constexpr int kCheckpointVersion = 1;

struct Checkpoint {
  policy::PolicyParams params;
  Vocabulary vocab;
  Language language = Language::kEnglish;
};

nlohmann::json CheckpointToJson(const Checkpoint& ckpt);
// Throws InputError on a wrong format tag, unknown version, or tensors that
// disagree with the declared dimensions or the vocabulary.
Checkpoint CheckpointFromJson(const nlohmann::json& j);

void SaveCheckpoint(const Checkpoint& ckpt, const std::string& path);
Checkpoint LoadCheckpoint(const std::string& path);

}  // namespace captionforge

#endif  // CAPTIONFORGE_CHECKPOINT_H_
