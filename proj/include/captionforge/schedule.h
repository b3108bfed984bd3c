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

#ifndef CAPTIONFORGE_SCHEDULE_H_
#define CAPTIONFORGE_SCHEDULE_H_

#include <string_view>

namespace captionforge::policy {

// Warmup-then-step-decay schedule, epochs counted from 1:
//   epochs 1..6: min(epoch * 1e-4, 3e-4)
//   epoch e > 6: 3e-4 * 0.5^(floor((e - 7) / 3) + 1)
// so the first halving lands on epoch 7 and repeats every 3 epochs.
double TransformerLr(int epoch);

enum class ScheduleKind {
  kTransformer,
  // `constant_lr` until `switch_epoch` (exclusive), then `switch_lr`. With
  // switch_epoch = 71 and switch_lr = 1e-5 this is the long-run X-Linear
  // recipe of 70 epochs followed by a low-rate stage.
  kConstant,
};

// Parses "transformer" or "constant". Throws InputError otherwise.
ScheduleKind ParseScheduleKind(std::string_view name);
std::string_view ScheduleName(ScheduleKind kind);

struct LrSchedule {
  ScheduleKind kind = ScheduleKind::kTransformer;
  double constant_lr = 1e-4;
  int switch_epoch = 0;  // 0 disables the switch
  double switch_lr = 1e-5;
  // Multiplies every rate. Desk-scale runs with a handful of optimizer
  // steps per epoch use a scale above 1.
  double scale = 1.0;

  static LrSchedule XLinearPreset();

  // epoch >= 1, otherwise std::invalid_argument.
  double operator()(int epoch) const;
};

}  // namespace captionforge::policy

#endif  // CAPTIONFORGE_SCHEDULE_H_
