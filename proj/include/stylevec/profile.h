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

#ifndef STYLEVEC_PROFILE_H_
#define STYLEVEC_PROFILE_H_

#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stylevec/corpus.h"
#include "stylevec/featurizers.h"

namespace stylevec {

enum class LabelScheme { kClearNlp, kUd };

std::string_view LabelSchemeName(LabelScheme scheme);
LabelScheme ParseLabelScheme(std::string_view name);

// From the root relation ("ROOT" vs "root"). nullopt when there are no
// sentences; throws Error if documents disagree.
std::optional<LabelScheme> DetectLabelScheme(std::span<const ParsedDocument> docs);

std::string_view NormalizationModeName(NormalizationMode mode);
NormalizationMode ParseNormalizationMode(std::string_view name);

struct GroupSpan {
  FeatureGroup group;
  size_t offset = 0;
  size_t size = 0;
};

// Qualified feature names in vector order.
struct VectorLayout {
  std::vector<std::string> names;
  std::vector<GroupSpan> groups;

  size_t size() const { return names.size(); }
  std::optional<size_t> IndexOf(std::string_view name) const;
  const GroupSpan* Find(FeatureGroup group) const;
};

struct ProfileOverrides {
  std::optional<bool> aux_length;
  std::optional<NormalizationMode> normalization;
};

// Pins the vocabularies and pattern pack. The hash covers file contents and
// every option that changes vector values.
//
//   {"label_scheme": "clearnlp",
//    "vocabularies": {"punctuation": "../vocab/punctuation.txt", ...},
//    "patterns": "../patterns/en-clearnlp.pack",
//    "aux_length": false, "normalization": "group_total"}
//
// Relative paths resolve against the profile file's directory.
class Profile {
 public:
  static Profile Load(const std::filesystem::path& path,
                      const ProfileOverrides& overrides = {});

  const std::string& name() const { return name_; }
  LabelScheme label_scheme() const { return label_scheme_; }
  NormalizationMode normalization() const { return normalization_; }
  const std::string& hash() const { return hash_; }
  const Featurizer& featurizer() const { return *featurizer_; }
  const VectorLayout& layout() const { return *layout_; }
  std::shared_ptr<const VectorLayout> shared_layout() const { return layout_; }

  // Throws Error when the documents' label scheme differs from the profile's.
  void CheckLabelScheme(std::span<const ParsedDocument> docs) const;

 private:
  std::string name_;
  LabelScheme label_scheme_ = LabelScheme::kClearNlp;
  NormalizationMode normalization_ = NormalizationMode::kGroupTotal;
  std::string hash_;
  std::shared_ptr<const Featurizer> featurizer_;
  std::shared_ptr<const VectorLayout> layout_;
};

// $STYLEVEC_PROFILE_DIR, else the installed data directory.
std::filesystem::path DefaultProfileDir();
std::filesystem::path DefaultProfilePath(LabelScheme scheme);

}  // namespace stylevec

#endif  // STYLEVEC_PROFILE_H_
