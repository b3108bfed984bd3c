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

#include "captionforge/decode.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "captionforge/errors.h"
#include "captionforge/random.h"

namespace captionforge::decode {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::vector<bool> AllowedMask(const StepModel& model,
                              std::span<const double> feature,
                              const DecodeOptions& options) {
  if (static_cast<int>(feature.size()) != model.feature_size()) {
    throw DimensionMismatchError(
        "feature has " + std::to_string(feature.size()) +
        " entries, model expects " + std::to_string(model.feature_size()));
  }
  if (options.max_len < 1) throw std::invalid_argument("max_len must be >= 1");
  const int v = model.vocab_size();
  if (options.eos < 0 || options.eos >= v || options.bos < 0 ||
      options.bos >= v) {
    throw IdOutOfRangeError("BOS/EOS id outside the model vocabulary");
  }
  std::vector<bool> allowed(static_cast<size_t>(v), true);
  for (TokenId id : options.banned) {
    if (id >= 0 && id < v) allowed[static_cast<size_t>(id)] = false;
  }
  allowed[static_cast<size_t>(options.eos)] = true;
  return allowed;
}

std::vector<double> Step(const StepModel& model, const ModelState& state,
                         TokenId prev, std::span<const double> feature,
                         ModelState& next) {
  std::vector<double> probs = model.NextDistribution(state, prev, feature, next);
  if (static_cast<int>(probs.size()) != model.vocab_size()) {
    throw DimensionMismatchError("model returned a distribution of size " +
                                 std::to_string(probs.size()));
  }
  return probs;
}

double SafeLog(double p) { return p > 0.0 ? std::log(p) : kNegInf; }

void Finalize(Hypothesis& h, const DecodeOptions& options) {
  h.score = options.length_norm && h.steps() > 0
                ? h.logprob / static_cast<double>(h.steps())
                : h.logprob;
}

struct Live {
  std::vector<TokenId> ids;
  double logprob = 0.0;
  ModelState state;
};

struct Expansion {
  double logprob;
  size_t parent;
  TokenId token;
};

}  // namespace

size_t SampleIndex(std::span<const double> probs, double u) {
  double total = 0.0;
  for (double p : probs) total += p;
  if (!(total > 0.0)) throw std::invalid_argument("no probability mass");
  const double target = u * total;
  double cumulative = 0.0;
  size_t last_positive = 0;
  for (size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] <= 0.0) continue;
    last_positive = i;
    cumulative += probs[i];
    if (target < cumulative) return i;
  }
  return last_positive;
}

Hypothesis GreedyDecode(const StepModel& model, std::span<const double> feature,
                        const DecodeOptions& options) {
  const std::vector<bool> allowed = AllowedMask(model, feature, options);
  Hypothesis h;
  ModelState state = model.InitialState();
  ModelState next;
  TokenId prev = options.bos;
  for (int step = 0; step < options.max_len; ++step) {
    const std::vector<double> probs = Step(model, state, prev, feature, next);
    // Compare cumulative sums, exactly as a beam of width 1 would.
    TokenId best = -1;
    double best_total = kNegInf;
    for (size_t t = 0; t < probs.size(); ++t) {
      if (!allowed[t]) continue;
      const double total = h.logprob + SafeLog(probs[t]);
      if (best < 0 || total > best_total) {
        best = static_cast<TokenId>(t);
        best_total = total;
      }
    }
    h.logprob = best_total;
    if (best == options.eos) {
      h.finished = true;
      break;
    }
    h.ids.push_back(best);
    prev = best;
    std::swap(state, next);
  }
  Finalize(h, options);
  return h;
}

Hypothesis SampleDecode(const StepModel& model, std::span<const double> feature,
                        std::uint64_t seed, const DecodeOptions& options,
                        double temperature) {
  if (!(temperature > 0.0)) {
    throw std::invalid_argument("temperature must be > 0");
  }
  const std::vector<bool> allowed = AllowedMask(model, feature, options);
  Rng rng(seed);
  Hypothesis h;
  ModelState state = model.InitialState();
  ModelState next;
  TokenId prev = options.bos;
  std::vector<double> weights(allowed.size());
  for (int step = 0; step < options.max_len; ++step) {
    const std::vector<double> probs = Step(model, state, prev, feature, next);
    double max_lp = kNegInf;
    for (size_t t = 0; t < probs.size(); ++t) {
      if (allowed[t]) max_lp = std::max(max_lp, SafeLog(probs[t]));
    }
    for (size_t t = 0; t < probs.size(); ++t) {
      weights[t] = allowed[t] && probs[t] > 0.0
                       ? std::exp((SafeLog(probs[t]) - max_lp) / temperature)
                       : 0.0;
    }
    const auto token =
        static_cast<TokenId>(SampleIndex(weights, rng.UniformDouble()));
    h.logprob += SafeLog(probs[static_cast<size_t>(token)]);
    if (token == options.eos) {
      h.finished = true;
      break;
    }
    h.ids.push_back(token);
    prev = token;
    std::swap(state, next);
  }
  Finalize(h, options);
  return h;
}

std::vector<Hypothesis> BeamSearch(const StepModel& model,
                                   std::span<const double> feature, int beam,
                                   const DecodeOptions& options) {
  if (beam < 1) throw std::invalid_argument("beam must be >= 1");
  const std::vector<bool> allowed = AllowedMask(model, feature, options);
  std::vector<Hypothesis> done;
  std::vector<Live> live(1);
  live[0].state = model.InitialState();

  for (int step = 0; step < options.max_len && !live.empty(); ++step) {
    std::vector<ModelState> next_states(live.size());
    std::vector<Expansion> expansions;
    for (size_t k = 0; k < live.size(); ++k) {
      const TokenId prev = live[k].ids.empty() ? options.bos : live[k].ids.back();
      const std::vector<double> probs =
          Step(model, live[k].state, prev, feature, next_states[k]);
      for (size_t t = 0; t < probs.size(); ++t) {
        if (!allowed[t]) continue;
        expansions.push_back({live[k].logprob + SafeLog(probs[t]), k,
                              static_cast<TokenId>(t)});
      }
    }
    const size_t keep = std::min(expansions.size(), static_cast<size_t>(beam));
    std::partial_sort(expansions.begin(), expansions.begin() + keep,
                      expansions.end(),
                      [](const Expansion& a, const Expansion& b) {
                        if (a.logprob != b.logprob) return a.logprob > b.logprob;
                        if (a.parent != b.parent) return a.parent < b.parent;
                        return a.token < b.token;
                      });
    std::vector<Live> survivors;
    for (size_t e = 0; e < keep; ++e) {
      const Expansion& x = expansions[e];
      if (x.token == options.eos) {
        Hypothesis h;
        h.ids = live[x.parent].ids;
        h.logprob = x.logprob;
        h.finished = true;
        done.push_back(std::move(h));
      } else {
        Live next;
        next.ids = live[x.parent].ids;
        next.ids.push_back(x.token);
        next.logprob = x.logprob;
        next.state = next_states[x.parent];
        survivors.push_back(std::move(next));
      }
    }
    live = std::move(survivors);
  }

  for (Live& l : live) {
    Hypothesis h;
    h.ids = std::move(l.ids);
    h.logprob = l.logprob;
    done.push_back(std::move(h));
  }
  for (Hypothesis& h : done) Finalize(h, options);
  std::stable_sort(done.begin(), done.end(),
                   [](const Hypothesis& a, const Hypothesis& b) {
                     if (a.score != b.score) return a.score > b.score;
                     return a.ids < b.ids;
                   });
  return done;
}

}  // namespace captionforge::decode
