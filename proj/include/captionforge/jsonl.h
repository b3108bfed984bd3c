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

// JSON and JSON-lines file I/O plus loaders for the corpus formats:
//
//   candidates  {"id": "...", "caption": "..."}
//   references  {"id": "...", "refs": ["...", ...]}  or one
//               {"id": "...", "caption": "..."} line per reference
//   features    {"id": "...", "feature": [f0, f1, ...]}
//
// Loader errors name the offending file and 1-based line.

#ifndef CAPTIONFORGE_JSONL_H_
#define CAPTIONFORGE_JSONL_H_

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"

namespace captionforge {

struct JsonLine {
  size_t line = 0;  // 1-based
  nlohmann::json value;
};

// Blank lines are skipped. Throws InputError for unreadable files and
// unparsable lines.
std::vector<JsonLine> ReadJsonLines(const std::string& path);
nlohmann::json ReadJsonFile(const std::string& path);

// Compact, one object per line.
void WriteJsonLines(const std::string& path,
                    const std::vector<nlohmann::json>& rows);
// Indented, trailing newline.
void WriteJsonFile(const std::string& path, const nlohmann::json& value);

struct CandidateRow {
  std::string id;
  std::string caption;
};

struct ReferenceRow {
  std::string id;
  std::vector<std::string> refs;
};

struct FeatureRow {
  std::string id;
  Eigen::VectorXd feature;
};

// File order is preserved. Duplicate candidate or feature ids are errors;
// reference lines sharing an id are merged.
std::vector<CandidateRow> LoadCandidates(const std::string& path);
std::vector<ReferenceRow> LoadReferences(const std::string& path);
std::vector<FeatureRow> LoadFeatures(const std::string& path);

}  // namespace captionforge

#endif  // CAPTIONFORGE_JSONL_H_
