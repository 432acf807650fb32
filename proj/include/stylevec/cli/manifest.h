// Copyright 2026 The Stylevec Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef STYLEVEC_CLI_MANIFEST_H_
#define STYLEVEC_CLI_MANIFEST_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace stylevec::cli {

struct FileDigest {
  std::string path;
  std::string sha256;
};

// Written as "<output>.manifest.json" beside each output file.
struct RunManifest {
  std::string command;
  std::vector<std::string> argv;
  std::map<std::string, std::string> config;
  std::string profile_hash;
  std::vector<FileDigest> inputs;
  std::vector<FileDigest> outputs;
  std::optional<uint64_t> seed;
  std::string version;
  std::string started_at;   // UTC, ISO 8601
  std::string finished_at;

  void AddInput(const std::filesystem::path& path);
  void AddOutput(const std::filesystem::path& path);
  std::string ToJson() const;
};

RunManifest ManifestFromJson(const std::string& text);
std::string UtcTimestamp();
std::filesystem::path ManifestPathFor(const std::filesystem::path& output);

}  // namespace stylevec::cli

#endif  // STYLEVEC_CLI_MANIFEST_H_
