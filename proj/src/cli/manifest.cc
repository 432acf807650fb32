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

#include "stylevec/cli/manifest.h"

#include <chrono>
#include <ctime>

#include "json.hpp"
#include "stylevec/digest.h"
#include "stylevec/error.h"

namespace stylevec::cli {

using nlohmann::json;

void RunManifest::AddInput(const std::filesystem::path& path) {
  inputs.push_back({path.string(), Sha256File(path)});
}

void RunManifest::AddOutput(const std::filesystem::path& path) {
  outputs.push_back({path.string(), Sha256File(path)});
}

std::string RunManifest::ToJson() const {
  json j;
  j["command"] = command;
  j["argv"] = argv;
  j["config"] = config;
  j["profile_hash"] = profile_hash;
  auto digests = [](const std::vector<FileDigest>& files) {
    json a = json::array();
    for (const auto& f : files) a.push_back({{"path", f.path}, {"sha256", f.sha256}});
    return a;
  };
  j["inputs"] = digests(inputs);
  j["outputs"] = digests(outputs);
  j["seed"] = seed ? json(*seed) : json(nullptr);
  j["version"] = version;
  j["started_at"] = started_at;
  j["finished_at"] = finished_at;
  return j.dump(2) + "\n";
}

RunManifest ManifestFromJson(const std::string& text) {
  try {
    json j = json::parse(text);
    RunManifest m;
    m.command = j.at("command").get<std::string>();
    m.argv = j.at("argv").get<std::vector<std::string>>();
    m.config = j.at("config").get<std::map<std::string, std::string>>();
    m.profile_hash = j.at("profile_hash").get<std::string>();
    for (const char* key : {"inputs", "outputs"}) {
      auto& dst = std::string(key) == "inputs" ? m.inputs : m.outputs;
      for (const auto& f : j.at(key)) {
        dst.push_back({f.at("path").get<std::string>(), f.at("sha256").get<std::string>()});
      }
    }
    if (!j.at("seed").is_null()) m.seed = j["seed"].get<uint64_t>();
    m.version = j.at("version").get<std::string>();
    m.started_at = j.at("started_at").get<std::string>();
    m.finished_at = j.at("finished_at").get<std::string>();
    return m;
  } catch (const json::exception& e) {
    throw Error(std::string("manifest: ") + e.what());
  }
}

std::string UtcTimestamp() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::filesystem::path ManifestPathFor(const std::filesystem::path& output) {
  return std::filesystem::path(output.string() + ".manifest.json");
}

}  // namespace stylevec::cli
