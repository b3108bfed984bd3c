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

// METEOR-lite: exact and stem matching only, no synonym or paraphrase
// resources.
//
// An alignment is a one-to-one set of (candidate, reference) position pairs
// whose tokens are equal (exact) or, for English, share a stem. Matching is
// staged: the chosen alignment has the most exact pairs, then the most
// pairs in total, then the fewest chunks. A chunk is a maximal run of pairs
// adjacent in both sentences.
//
//   P = m / |cand|, R = m / |ref|
//   Fmean = P R / (alpha P + (1 - alpha) R)
//   penalty = gamma (chunks / m)^beta
//   score = Fmean (1 - penalty)
//
// with alpha = 0.9, beta = 3, gamma = 0.5, maximised over references.

#ifndef CAPTIONFORGE_METEOR_H_
#define CAPTIONFORGE_METEOR_H_

#include <string>
#include <string_view>

#include "captionforge/ngram.h"
#include "captionforge/text.h"

namespace captionforge::metrics {

struct MeteorParams {
  double alpha = 0.9;
  double beta = 3.0;
  double gamma = 0.5;
};

struct MeteorAlignment {
  int exact = 0;
  int matches = 0;  // exact + stem
  int chunks = 0;
  // False when the exact search ran out of budget and the left-to-right
  // greedy aligner was used instead. Only pathological, highly repetitive
  // inputs hit this.
  bool optimal = true;
};

// Suffix-stripping stemmer. Rules, first match wins, each only if at least
// three characters remain:
//   -ing -> ""; -ed -> ""; -es -> "" after s/x/z/ch/sh;
//   -s -> "" unless preceded by s or u.
std::string StemEnglish(std::string_view word);

MeteorAlignment AlignMeteor(const Tokens& cand, const Tokens& ref,
                            Language language);

// Throws EmptyReferenceSetError when `refs` is empty.
double MeteorLite(const Tokens& cand, const RefSet& refs, Language language,
                  const MeteorParams& params = {});

// Score for an already computed alignment.
double MeteorFromAlignment(const MeteorAlignment& alignment, size_t cand_len,
                           size_t ref_len, const MeteorParams& params = {});

}  // namespace captionforge::metrics

#endif  // CAPTIONFORGE_METEOR_H_
