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

#include "captionforge/schedule.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "captionforge/errors.h"

namespace captionforge::policy {

double TransformerLr(int epoch) {
  if (epoch < 1) throw std::invalid_argument("epochs are counted from 1");
  constexpr double kStep = 1e-4;
  constexpr double kPeak = 3e-4;
  constexpr int kWarmEpochs = 6;
  constexpr int kDecayEvery = 3;
  if (epoch <= kWarmEpochs) return std::min(epoch * kStep, kPeak);
  const int halvings = (epoch - kWarmEpochs - 1) / kDecayEvery + 1;
  return kPeak * std::ldexp(1.0, -halvings);
}

ScheduleKind ParseScheduleKind(std::string_view name) {
  if (name == "transformer") return ScheduleKind::kTransformer;
  if (name == "constant") return ScheduleKind::kConstant;
  throw InputError("unknown schedule '" + std::string(name) +
                   "' (expected transformer or constant)");
}

std::string_view ScheduleName(ScheduleKind kind) {
  return kind == ScheduleKind::kTransformer ? "transformer" : "constant";
}

LrSchedule LrSchedule::XLinearPreset() {
  LrSchedule s;
  s.kind = ScheduleKind::kConstant;
  s.constant_lr = 1e-4;
  s.switch_epoch = 71;
  s.switch_lr = 1e-5;
  return s;
}

double LrSchedule::operator()(int epoch) const {
  if (epoch < 1) throw std::invalid_argument("epochs are counted from 1");
  double lr = 0.0;
  if (kind == ScheduleKind::kTransformer) {
    lr = TransformerLr(epoch);
  } else {
    lr = (switch_epoch > 0 && epoch >= switch_epoch) ? switch_lr : constant_lr;
  }
  return lr * scale;
}

}  // namespace captionforge::policy
