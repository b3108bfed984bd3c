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

#include "captionforge/scorer.h"

#include <vector>

#include "captionforge/bleu.h"
#include "captionforge/errors.h"
#include "captionforge/meteor.h"
#include "captionforge/parallel.h"
#include "captionforge/rouge.h"

namespace captionforge::metrics {

nlohmann::json SentenceScores::ToJson() const {
  nlohmann::json j;
  j["CIDEr"] = cider;
  for (int n = 1; n <= kMaxNGramOrder; ++n) {
    j["Bleu_" + std::to_string(n)] = bleu[n - 1];
  }
  j["METEOR"] = meteor;
  j["ROUGE_L"] = rouge_l;
  return j;
}

nlohmann::json MetricReport::ToJson() const {
  nlohmann::json per = nlohmann::json::object();
  for (const auto& [id, scores] : per_sentence) per[id] = scores.ToJson();
  return nlohmann::json{{"corpus", corpus.ToJson()}, {"per_sentence", per}};
}

MetricReport ScoreCorpus(const CandidateMap& cands, const ReferenceMap& refs,
                         const IdfTable& idf, const ScoreOptions& options) {
  if (cands.size() != refs.size()) {
    throw MismatchedIdsError("candidates cover " + std::to_string(cands.size()) +
                             " ids but references cover " +
                             std::to_string(refs.size()));
  }
  std::vector<const std::string*> ids;
  std::vector<const Tokens*> cand_list;
  std::vector<const RefSet*> ref_list;
  auto r = refs.begin();
  for (const auto& [id, tokens] : cands) {
    if (r->first != id) {
      throw MismatchedIdsError("candidate id '" + id +
                               "' has no matching reference set");
    }
    ids.push_back(&id);
    cand_list.push_back(&tokens);
    ref_list.push_back(&r->second);
    ++r;
  }

  const size_t count = ids.size();
  std::vector<SentenceScores> scores(count);
  std::vector<BleuStats> stats(count);
  ParallelFor(count, options.jobs, [&](size_t i) {
    const Tokens& cand = *cand_list[i];
    const RefSet& ref_set = *ref_list[i];
    SentenceScores& s = scores[i];
    stats[i] = ComputeBleuStats(cand, ref_set);
    const std::vector<double> bleu = BleuSentence(cand, ref_set);
    std::copy(bleu.begin(), bleu.end(), s.bleu.begin());
    s.cider = Cider(cand, ref_set, idf, options.cider);
    s.meteor = MeteorLite(cand, ref_set, options.language);
    s.rouge_l = RougeL(cand, ref_set);
  });

  MetricReport report;
  BleuStats pooled;
  for (size_t i = 0; i < count; ++i) {
    pooled += stats[i];
    report.corpus.cider += scores[i].cider;
    report.corpus.meteor += scores[i].meteor;
    report.corpus.rouge_l += scores[i].rouge_l;
    report.per_sentence.emplace(*ids[i], scores[i]);
  }
  if (count > 0) {
    const double n = static_cast<double>(count);
    report.corpus.cider /= n;
    report.corpus.meteor /= n;
    report.corpus.rouge_l /= n;
    const std::vector<double> bleu = BleuFromStats(pooled);
    std::copy(bleu.begin(), bleu.end(), report.corpus.bleu.begin());
  }
  return report;
}

MetricReport ScoreCorpus(const CandidateMap& cands, const ReferenceMap& refs,
                         const ScoreOptions& options) {
  std::vector<RefSet> sets;
  sets.reserve(refs.size());
  for (const auto& [id, set] : refs) sets.push_back(set);
  return ScoreCorpus(cands, refs, IdfTable::Build(sets), options);
}

}  // namespace captionforge::metrics
