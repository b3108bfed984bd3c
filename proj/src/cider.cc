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

#include "captionforge/cider.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "captionforge/errors.h"

namespace captionforge::metrics {
namespace {

// tf-idf weights and their L2 norm for one order.
struct WeightedOrder {
  std::map<NGram, double> weights;
  double norm = 0.0;
};

std::vector<WeightedOrder> Vectorize(const Tokens& tokens,
                                     const IdfTable& idf) {
  const NGramMultiset grams(tokens, idf.max_n());
  std::vector<WeightedOrder> out(static_cast<size_t>(idf.max_n()));
  for (int n = 1; n <= idf.max_n(); ++n) {
    WeightedOrder& order = out[static_cast<size_t>(n - 1)];
    double sq = 0.0;
    for (const auto& [gram, count] : grams.order(n)) {
      const double w = count * idf.Idf(gram);
      order.weights.emplace(gram, w);
      sq += w * w;
    }
    order.norm = std::sqrt(sq);
  }
  return out;
}

double OrderSimilarity(const WeightedOrder& cand, const WeightedOrder& ref,
                       CiderVariant variant) {
  double dot = 0.0;
  for (const auto& [gram, w_cand] : cand.weights) {
    auto it = ref.weights.find(gram);
    if (it == ref.weights.end()) continue;
    const double w_ref = it->second;
    dot += (variant == CiderVariant::kCiderD ? std::min(w_cand, w_ref)
                                             : w_cand) *
           w_ref;
  }
  if (cand.norm == 0.0 || ref.norm == 0.0) return 0.0;
  // Cauchy-Schwarz bounds this by 1 up to rounding.
  return std::min(1.0, dot / (cand.norm * ref.norm));
}

}  // namespace

CiderVariant ParseCiderVariant(std::string_view name) {
  if (name == "d" || name == "D" || name == "cider-d") {
    return CiderVariant::kCiderD;
  }
  if (name == "plain") return CiderVariant::kPlain;
  throw InputError("unknown CIDEr variant '" + std::string(name) +
                   "' (expected plain or d)");
}

IdfTable IdfTable::Build(std::span<const RefSet> refs, int max_n) {
  IdfTable table;
  table.max_n_ = max_n;
  table.num_docs_ = static_cast<int>(refs.size());
  for (const RefSet& set : refs) {
    std::set<NGram> seen;
    for (const Tokens& ref : set) {
      const NGramMultiset grams(ref, max_n);
      for (int n = 1; n <= max_n; ++n) {
        for (const auto& [gram, count] : grams.order(n)) seen.insert(gram);
      }
    }
    for (const NGram& gram : seen) ++table.doc_freq_[gram];
  }
  return table;
}

int IdfTable::DocFreq(const NGram& gram) const {
  auto it = doc_freq_.find(gram);
  return it == doc_freq_.end() ? 0 : it->second;
}

double IdfTable::Idf(const NGram& gram) const {
  const int df = DocFreq(gram);
  if (df == 0) return 0.0;
  return std::log(static_cast<double>(num_docs_) / static_cast<double>(df));
}

double Cider(const Tokens& cand, const RefSet& refs, const IdfTable& idf,
             CiderVariant variant, double sigma) {
  if (idf.num_docs() == 0) throw EmptyIdfError("IDF table has no documents");
  if (refs.empty()) throw EmptyReferenceSetError("CIDEr needs >= 1 reference");
  const std::vector<WeightedOrder> cand_vec = Vectorize(cand, idf);
  const double lc = static_cast<double>(cand.size());
  double total = 0.0;
  for (const Tokens& ref : refs) {
    const std::vector<WeightedOrder> ref_vec = Vectorize(ref, idf);
    double penalty = 1.0;
    if (variant == CiderVariant::kCiderD) {
      const double delta = lc - static_cast<double>(ref.size());
      penalty = std::exp(-(delta * delta) / (2.0 * sigma * sigma));
    }
    double per_ref = 0.0;
    for (size_t k = 0; k < cand_vec.size(); ++k) {
      per_ref += OrderSimilarity(cand_vec[k], ref_vec[k], variant) * penalty;
    }
    total += per_ref / static_cast<double>(cand_vec.size());
  }
  return kCiderScale * total / static_cast<double>(refs.size());
}

}  // namespace captionforge::metrics
