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

#include "captionforge/dataset.h"

#include <map>
#include <string>

#include "captionforge/errors.h"

namespace captionforge {
namespace {

std::map<std::string, const FeatureRow*> IndexFeatures(
    const std::vector<FeatureRow>& features) {
  std::map<std::string, const FeatureRow*> index;
  for (const FeatureRow& f : features) index.emplace(f.id, &f);
  return index;
}

const FeatureRow& FindFeature(
    const std::map<std::string, const FeatureRow*>& index,
    const std::string& id) {
  auto it = index.find(id);
  if (it == index.end()) {
    throw MismatchedIdsError("no feature vector for id '" + id + "'");
  }
  return *it->second;
}

}  // namespace

std::vector<Caption> CorpusCaptions(const std::vector<ReferenceRow>& refs,
                                    Language language, int max_len) {
  std::vector<Caption> out;
  for (const ReferenceRow& row : refs) {
    for (const std::string& r : row.refs) {
      out.push_back(MakeCaption(row.id, r, language, max_len));
    }
  }
  return out;
}

std::vector<policy::XentExample> BuildXentExamples(
    const std::vector<ReferenceRow>& refs,
    const std::vector<FeatureRow>& features, const Vocabulary& vocab,
    Language language, int max_len) {
  const auto index = IndexFeatures(features);
  std::vector<policy::XentExample> out;
  for (const ReferenceRow& row : refs) {
    const FeatureRow& f = FindFeature(index, row.id);
    for (const std::string& r : row.refs) {
      out.push_back(
          {Encode(MakeCaption(row.id, r, language, max_len), vocab), f.feature});
    }
  }
  return out;
}

std::vector<policy::ScstExample> BuildScstExamples(
    const std::vector<ReferenceRow>& refs,
    const std::vector<FeatureRow>& features, Language language) {
  const auto index = IndexFeatures(features);
  std::vector<policy::ScstExample> out;
  for (const ReferenceRow& row : refs) {
    policy::ScstExample ex;
    ex.id = row.id;
    ex.feature = FindFeature(index, row.id).feature;
    for (const std::string& r : row.refs) {
      ex.refs.push_back(Tokenize(r, language));
    }
    if (ex.refs.empty()) {
      throw EmptyReferenceSetError("id '" + row.id + "' has no references");
    }
    out.push_back(std::move(ex));
  }
  return out;
}

}  // namespace captionforge
