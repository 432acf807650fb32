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

#include "stylevec/profile.h"

#include <cstdlib>
#include <sstream>

#include "json.hpp"

#include "stylevec/digest.h"
#include "stylevec/error.h"
#include "stylevec/io_util.h"

namespace stylevec {
namespace {

using nlohmann::json;

struct VocabSlot {
  const char* key;
  FeatureGroup group;
  FeatureVocabulary VocabularySet::*member;
  bool oov;
};

constexpr VocabSlot kSlots[] = {
    {"punctuation", FeatureGroup::kPunctuation, &VocabularySet::punctuation, false},
    {"emojis", FeatureGroup::kEmojis, &VocabularySet::emojis, true},
    {"pos_unigrams", FeatureGroup::kPosUnigrams, &VocabularySet::pos_unigrams, false},
    {"pos_bigrams", FeatureGroup::kPosBigrams, &VocabularySet::pos_bigrams, false},
    {"morph_tags", FeatureGroup::kMorphTags, &VocabularySet::morph_tags, false},
    {"dep_labels", FeatureGroup::kDepLabels, &VocabularySet::dep_labels, false},
    {"func_words", FeatureGroup::kFuncWords, &VocabularySet::func_words, false},
    {"transition_words", FeatureGroup::kTransitionWords,
     &VocabularySet::transition_words, false},
};

void HashField(Sha256* h, std::string_view tag, std::string_view bytes) {
  std::string head = std::string(tag) + ":" + std::to_string(bytes.size()) + "\n";
  h->Update(head);
  h->Update(bytes);
}

}  // namespace

std::string_view LabelSchemeName(LabelScheme scheme) {
  return scheme == LabelScheme::kClearNlp ? "clearnlp" : "ud";
}

LabelScheme ParseLabelScheme(std::string_view name) {
  if (name == "clearnlp") return LabelScheme::kClearNlp;
  if (name == "ud") return LabelScheme::kUd;
  throw Error("unknown label scheme '" + std::string(name) +
              "' (expected clearnlp or ud)");
}

std::optional<LabelScheme> DetectLabelScheme(std::span<const ParsedDocument> docs) {
  std::optional<LabelScheme> found;
  std::string first_doc;
  for (const auto& doc : docs) {
    for (const auto& s : doc.sentences) {
      for (size_t i = 0; i < s.size(); ++i) {
        if (!s[i].IsRoot(static_cast<int>(i))) continue;
        std::optional<LabelScheme> here;
        if (s[i].deprel == "ROOT") here = LabelScheme::kClearNlp;
        if (s[i].deprel == "root") here = LabelScheme::kUd;
        if (!here) continue;
        if (found && *found != *here) {
          throw Error("documents mix label schemes: '" + first_doc + "' uses " +
                      std::string(LabelSchemeName(*found)) + ", '" + doc.doc_id +
                      "' uses " + std::string(LabelSchemeName(*here)));
        }
        if (!found) first_doc = doc.doc_id;
        found = here;
      }
    }
  }
  return found;
}

std::string_view NormalizationModeName(NormalizationMode mode) {
  return mode == NormalizationMode::kGroupTotal ? "group_total" : "rate";
}

NormalizationMode ParseNormalizationMode(std::string_view name) {
  if (name == "group_total") return NormalizationMode::kGroupTotal;
  if (name == "rate") return NormalizationMode::kRate;
  throw Error("unknown normalization '" + std::string(name) +
              "' (expected group_total or rate)");
}

std::optional<size_t> VectorLayout::IndexOf(std::string_view name) const {
  for (size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return i;
  }
  return std::nullopt;
}

const GroupSpan* VectorLayout::Find(FeatureGroup group) const {
  for (const auto& g : groups) {
    if (g.group == group) return &g;
  }
  return nullptr;
}

Profile Profile::Load(const std::filesystem::path& path,
                      const ProfileOverrides& overrides) {
  json j;
  try {
    j = json::parse(ReadFile(path));
  } catch (const json::exception& e) {
    throw Error("profile " + path.string() + ": " + e.what());
  }
  const std::filesystem::path base = path.parent_path();
  auto str = [&](const json& obj, const char* key) -> std::string {
    if (!obj.contains(key) || !obj[key].is_string()) {
      throw Error("profile " + path.string() + ": missing string field '" + key + "'");
    }
    return obj[key].get<std::string>();
  };

  Profile p;
  p.name_ = j.value("name", path.stem().string());
  p.label_scheme_ = ParseLabelScheme(str(j, "label_scheme"));
  bool aux = j.value("aux_length", false);
  p.normalization_ = ParseNormalizationMode(j.value("normalization", "group_total"));
  if (overrides.aux_length) aux = *overrides.aux_length;
  if (overrides.normalization) p.normalization_ = *overrides.normalization;

  Sha256 h;
  h.Update("stylevec-profile-v1\n");
  HashField(&h, "label_scheme", LabelSchemeName(p.label_scheme_));
  HashField(&h, "normalization", NormalizationModeName(p.normalization_));
  HashField(&h, "aux_length", aux ? "1" : "0");

  if (!j.contains("vocabularies") || !j["vocabularies"].is_object()) {
    throw Error("profile " + path.string() + ": missing 'vocabularies'");
  }
  VocabularySet vocab;
  for (const auto& slot : kSlots) {
    std::filesystem::path file = base / str(j["vocabularies"], slot.key);
    std::string bytes = ReadFile(file);
    std::istringstream in(bytes);
    vocab.*slot.member =
        FeatureVocabulary::Parse(slot.group, in, file.string(), slot.oov);
    HashField(&h, slot.key, bytes);
  }
  std::filesystem::path pack_path = base / str(j, "patterns");
  std::string pack_bytes = ReadFile(pack_path);
  std::istringstream pack_in(pack_bytes);
  PatternSet patterns = CompilePatternSet(pack_in, pack_path.string());
  HashField(&h, "patterns", pack_bytes);

  std::string want = "-" + std::string(LabelSchemeName(p.label_scheme_));
  if (!patterns.language().ends_with(want)) {
    throw Error("profile " + path.string() + ": pattern pack language '" +
                patterns.language() + "' does not match label scheme " +
                std::string(LabelSchemeName(p.label_scheme_)));
  }
  p.hash_ = h.Hex();
  p.featurizer_ =
      std::make_shared<const Featurizer>(std::move(vocab), std::move(patterns), aux);

  auto layout = std::make_shared<VectorLayout>();
  for (FeatureGroup g : p.featurizer_->groups()) {
    const FeatureVocabulary& v = p.featurizer_->vocabulary(g);
    layout->groups.push_back({g, layout->names.size(), v.size()});
    for (size_t i = 0; i < v.size(); ++i) layout->names.push_back(v.QualifiedName(i));
  }
  p.layout_ = std::move(layout);
  return p;
}

void Profile::CheckLabelScheme(std::span<const ParsedDocument> docs) const {
  auto found = DetectLabelScheme(docs);
  if (found && *found != label_scheme_) {
    throw Error("label scheme mismatch: profile '" + name_ + "' expects " +
                std::string(LabelSchemeName(label_scheme_)) +
                " labels but the parses use " +
                std::string(LabelSchemeName(*found)));
  }
}

std::filesystem::path DefaultProfileDir() {
  if (const char* env = std::getenv("STYLEVEC_PROFILE_DIR"); env && *env) {
    return env;
  }
  return std::filesystem::path(STYLEVEC_DATA_DIR) / "profiles";
}

std::filesystem::path DefaultProfilePath(LabelScheme scheme) {
  return DefaultProfileDir() / ("en-" + std::string(LabelSchemeName(scheme)) + ".json");
}

}  // namespace stylevec
