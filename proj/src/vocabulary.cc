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

#include "stylevec/vocabulary.h"

#include <fstream>
#include <istream>

#include "stylevec/error.h"

namespace stylevec {
namespace {

constexpr std::array<std::string_view, 10> kGroupNames = {
    "punctuation", "emojis",      "pos_unigrams",  "pos_bigrams",
    "morph_tags",  "dep_labels",  "constructions", "func_words",
    "transition_words", "aux_length"};

std::string_view Trim(std::string_view s) {
  const char* ws = " \t\r\n\v\f";
  size_t b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  size_t e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

}  // namespace

std::string_view GroupName(FeatureGroup group) {
  return kGroupNames[static_cast<size_t>(group)];
}

std::optional<FeatureGroup> ParseGroupName(std::string_view name) {
  for (size_t i = 0; i < kGroupNames.size(); ++i) {
    if (kGroupNames[i] == name) return static_cast<FeatureGroup>(i);
  }
  return std::nullopt;
}

FeatureVocabulary FeatureVocabulary::FromEntries(FeatureGroup group,
                                                 std::vector<std::string> entries,
                                                 bool oov_bucket) {
  FeatureVocabulary v;
  v.group_ = group;
  v.oov_bucket_ = oov_bucket;
  if (oov_bucket) entries.emplace_back("OOV");
  for (size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].empty()) {
      throw Error(std::string(GroupName(group)) + ": empty vocabulary entry");
    }
    if (!v.index_.emplace(entries[i], i).second) {
      throw Error(std::string(GroupName(group)) + ": duplicate vocabulary entry '" +
                  entries[i] + "'");
    }
  }
  if (oov_bucket) v.index_.erase("OOV");
  v.entries_ = std::move(entries);
  return v;
}

FeatureVocabulary FeatureVocabulary::Parse(FeatureGroup group, std::istream& in,
                                           std::string_view source_name,
                                           bool oov_bucket) {
  std::vector<std::string> entries;
  std::string line;
  while (std::getline(in, line)) {
    std::string_view t = Trim(line);
    if (t.empty() || t.front() == '#') continue;
    entries.emplace_back(t);
  }
  try {
    return FromEntries(group, std::move(entries), oov_bucket);
  } catch (const Error& e) {
    throw Error(std::string(source_name) + ": " + e.what());
  }
}

FeatureVocabulary FeatureVocabulary::Load(FeatureGroup group,
                                          const std::filesystem::path& path,
                                          bool oov_bucket) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open vocabulary " + path.string());
  return Parse(group, in, path.string(), oov_bucket);
}

std::optional<size_t> FeatureVocabulary::Find(std::string_view entry) const {
  auto it = index_.find(std::string(entry));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::string FeatureVocabulary::QualifiedName(size_t index) const {
  return std::string(GroupName(group_)) + ":" + entries_.at(index);
}

}  // namespace stylevec
