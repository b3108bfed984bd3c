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

#ifndef CAPTIONFORGE_SCORER_H_
#define CAPTIONFORGE_SCORER_H_

#include <array>
#include <map>
#include <string>

#include "captionforge/cider.h"
#include "captionforge/ngram.h"
#include "captionforge/text.h"
#include "json.hpp"

namespace captionforge::metrics {

struct SentenceScores {
  double cider = 0.0;
  std::array<double, kMaxNGramOrder> bleu{};  // bleu[n-1] is BLEU-n
  double meteor = 0.0;
  double rouge_l = 0.0;

  // Keys: CIDEr, Bleu_1..Bleu_4, METEOR, ROUGE_L.
  nlohmann::json ToJson() const;
};

struct MetricReport {
  // BLEU pooled over the corpus; every other metric is the mean of the
  // per-sentence scores.
  SentenceScores corpus;
  // Per-sentence BLEU uses the add-one smoothed sentence variant.
  std::map<std::string, SentenceScores> per_sentence;

  // {"corpus": {...}, "per_sentence": {"<id>": {...}}}
  nlohmann::json ToJson() const;
};

struct ScoreOptions {
  CiderVariant cider = CiderVariant::kCiderD;
  Language language = Language::kEnglish;
  int jobs = 1;
};

using CandidateMap = std::map<std::string, Tokens>;
using ReferenceMap = std::map<std::string, RefSet>;

// Candidates and references must cover the same ids, otherwise
// MismatchedIdsError. Results do not depend on `options.jobs`.
MetricReport ScoreCorpus(const CandidateMap& cands, const ReferenceMap& refs,
                         const IdfTable& idf, const ScoreOptions& options = {});

// Convenience: IDF built from `refs` itself.
MetricReport ScoreCorpus(const CandidateMap& cands, const ReferenceMap& refs,
                         const ScoreOptions& options = {});

}  // namespace captionforge::metrics

#endif  // CAPTIONFORGE_SCORER_H_
