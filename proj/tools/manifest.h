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

// Run manifests: one JSON record per invocation naming the subcommand, the
// resolved configuration, SHA-256 digests of every input file, the seed and
// the toolkit version. No timestamps, so identical runs write identical
// manifests.

#ifndef CAPTIONFORGE_TOOLS_MANIFEST_H_
#define CAPTIONFORGE_TOOLS_MANIFEST_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace captionforge::cli {

// Lowercase hex SHA-256 of the file contents. Throws InputError.
std::string Sha256File(const std::string& path);

struct RunManifest {
  std::string command;
  nlohmann::json config = nlohmann::json::object();
  std::vector<std::pair<std::string, std::string>> inputs;  // role, path
  std::uint64_t seed = 0;
  nlohmann::json results = nlohmann::json::object();

  void AddInput(std::string role, std::string path);
  nlohmann::json ToJson() const;
  void Write(const std::string& path) const;
};

// "<output>.manifest.json"
std::string ManifestPathFor(const std::string& output);

}  // namespace captionforge::cli

#endif  // CAPTIONFORGE_TOOLS_MANIFEST_H_
