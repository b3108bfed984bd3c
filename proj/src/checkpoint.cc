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

#include "captionforge/checkpoint.h"

#include <string>
#include <vector>

#include "captionforge/errors.h"
#include "captionforge/jsonl.h"

namespace captionforge {
namespace {

nlohmann::json RowMajor(const Eigen::MatrixXd& m) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) out.push_back(m(r, c));
  }
  return out;
}

Eigen::MatrixXd ReadMatrix(const nlohmann::json& tensors, const char* name,
                           int rows, int cols) {
  if (!tensors.contains(name) || !tensors.at(name).is_array()) {
    throw InputError(std::string("checkpoint: missing tensor '") + name + "'");
  }
  const nlohmann::json& a = tensors.at(name);
  if (a.size() != static_cast<size_t>(rows) * static_cast<size_t>(cols)) {
    throw DimensionMismatchError(std::string("checkpoint: tensor '") + name +
                                 "' has " + std::to_string(a.size()) +
                                 " entries, expected " +
                                 std::to_string(rows * cols));
  }
  Eigen::MatrixXd m(rows, cols);
  size_t k = 0;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (!a[k].is_number()) {
        throw InputError(std::string("checkpoint: non-numeric entry in '") +
                         name + "'");
      }
      m(r, c) = a[k++].get<double>();
    }
  }
  return m;
}

int ReadDim(const nlohmann::json& dims, const char* name) {
  if (!dims.contains(name) || !dims.at(name).is_number_integer()) {
    throw InputError(std::string("checkpoint: missing dimension '") + name +
                     "'");
  }
  const int v = dims.at(name).get<int>();
  if (v < 1) {
    throw InputError(std::string("checkpoint: dimension '") + name +
                     "' must be positive");
  }
  return v;
}

}  // namespace

nlohmann::json CheckpointToJson(const Checkpoint& ckpt) {
  ckpt.params.CheckConsistent();
  if (ckpt.params.vocab_size() != ckpt.vocab.size()) {
    throw MismatchedVocabError("checkpoint: policy and vocabulary sizes differ");
  }
  const policy::PolicyParams& p = ckpt.params;
  nlohmann::json j;
  j["format"] = kCheckpointFormat;
  j["version"] = kCheckpointVersion;
  j["language"] = std::string(LanguageName(ckpt.language));
  j["dims"] = {{"vocab", p.vocab_size()},
               {"hidden", p.hidden_size()},
               {"feature", p.feature_size()}};
  j["vocabulary"] = ckpt.vocab.ToJson();
  nlohmann::json t;
  t["token_embed"] = RowMajor(p.token_embed);
  t["feature_proj"] = RowMajor(p.feature_proj);
  t["recur"] = RowMajor(p.recur);
  t["out_weight"] = RowMajor(p.out_weight);
  t["out_bias"] = RowMajor(p.out_bias);
  j["tensors"] = std::move(t);
  return j;
}

Checkpoint CheckpointFromJson(const nlohmann::json& j) {
  if (!j.is_object() || j.value("format", std::string()) != kCheckpointFormat) {
    throw InputError("not a captionforge checkpoint");
  }
  if (j.value("version", -1) != kCheckpointVersion) {
    throw InputError("unsupported checkpoint version");
  }
  if (!j.contains("dims") || !j.contains("tensors") ||
      !j.contains("vocabulary")) {
    throw InputError("checkpoint: missing dims, tensors or vocabulary");
  }
  const nlohmann::json& dims = j.at("dims");
  const int v = ReadDim(dims, "vocab");
  const int d = ReadDim(dims, "hidden");
  const int f = ReadDim(dims, "feature");

  const Language language = ParseLanguage(j.value("language", std::string("en")));
  Vocabulary vocab = Vocabulary::FromJson(j.at("vocabulary"));
  if (vocab.size() != v) {
    throw MismatchedVocabError("checkpoint: vocabulary has " +
                               std::to_string(vocab.size()) +
                               " entries, dims declare " + std::to_string(v));
  }
  const nlohmann::json& t = j.at("tensors");
  policy::PolicyParams p;
  p.token_embed = ReadMatrix(t, "token_embed", v, d);
  p.feature_proj = ReadMatrix(t, "feature_proj", f, d);
  p.recur = ReadMatrix(t, "recur", d, d);
  p.out_weight = ReadMatrix(t, "out_weight", d, v);
  p.out_bias = ReadMatrix(t, "out_bias", v, 1).col(0);
  if (!p.AllFinite()) throw NumericalError("checkpoint: non-finite parameters");
  Checkpoint ckpt{std::move(p), std::move(vocab), language};
  return ckpt;
}

void SaveCheckpoint(const Checkpoint& ckpt, const std::string& path) {
  WriteJsonFile(path, CheckpointToJson(ckpt));
}

Checkpoint LoadCheckpoint(const std::string& path) {
  return CheckpointFromJson(ReadJsonFile(path));
}

}  // namespace captionforge
