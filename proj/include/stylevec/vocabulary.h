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

#ifndef STYLEVEC_VOCABULARY_H_
#define STYLEVEC_VOCABULARY_H_

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace stylevec {

// Vector layout order. kAuxLength is optional and always last.
enum class FeatureGroup {
  kPunctuation,
  kEmojis,
  kPosUnigrams,
  kPosBigrams,
  kMorphTags,
  kDepLabels,
  kConstructions,
  kFuncWords,
  kTransitionWords,
  kAuxLength,
};

inline constexpr std::array<FeatureGroup, 9> kCoreGroups = {
    FeatureGroup::kPunctuation,     FeatureGroup::kEmojis,
    FeatureGroup::kPosUnigrams,     FeatureGroup::kPosBigrams,
    FeatureGroup::kMorphTags,       FeatureGroup::kDepLabels,
    FeatureGroup::kConstructions,   FeatureGroup::kFuncWords,
    FeatureGroup::kTransitionWords,
};

std::string_view GroupName(FeatureGroup group);
std::optional<FeatureGroup> ParseGroupName(std::string_view name);

// Ordered feature names of one group. With an OOV bucket the final entry is
// "OOV" (qualified "<group>:OOV").
class FeatureVocabulary {
 public:
  FeatureVocabulary() = default;

  // Throws Error on duplicate or empty entries.
  static FeatureVocabulary FromEntries(FeatureGroup group,
                                       std::vector<std::string> entries,
                                       bool oov_bucket = false);
  // One entry per line; blank lines and lines starting with '#' are skipped,
  // surrounding whitespace trimmed.
  static FeatureVocabulary Parse(FeatureGroup group, std::istream& in,
                                 std::string_view source_name,
                                 bool oov_bucket = false);
  static FeatureVocabulary Load(FeatureGroup group,
                                const std::filesystem::path& path,
                                bool oov_bucket = false);

  FeatureGroup group() const { return group_; }
  size_t size() const { return entries_.size(); }
  const std::vector<std::string>& entries() const { return entries_; }
  bool has_oov() const { return oov_bucket_; }
  size_t oov_index() const { return entries_.size() - 1; }

  // Index of an in-vocabulary entry; never returns the OOV slot.
  std::optional<size_t> Find(std::string_view entry) const;
  std::string QualifiedName(size_t index) const;

 private:
  FeatureGroup group_ = FeatureGroup::kPunctuation;
  std::vector<std::string> entries_;
  bool oov_bucket_ = false;
  std::unordered_map<std::string, size_t> index_;
};

}  // namespace stylevec

#endif  // STYLEVEC_VOCABULARY_H_
