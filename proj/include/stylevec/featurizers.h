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

#ifndef STYLEVEC_FEATURIZERS_H_
#define STYLEVEC_FEATURIZERS_H_

#include <cstddef>
#include <string>
#include <optional>
#include <unordered_map>
#include <vector>

#include "stylevec/corpus.h"
#include "stylevec/srm.h"
#include "stylevec/vocabulary.h"

namespace stylevec {

struct GroupCounts {
  FeatureGroup group = FeatureGroup::kPunctuation;
  std::vector<double> counts;
  // The group's rate denominator (tokens, sentences, bigrams, ...).
  double denominator = 0;

  double Total() const;
};

// kGroupTotal divides each group by the sum of its own counts, so a nonzero
// group sums to 1. kRate divides by GroupCounts::denominator.
enum class NormalizationMode { kGroupTotal, kRate };

// Zero divisor gives zeros. The aux_length group is returned unchanged.
std::vector<double> NormalizeGroup(const GroupCounts& counts,
                                   NormalizationMode mode);

struct VocabularySet {
  FeatureVocabulary punctuation;
  FeatureVocabulary emojis;  // with OOV bucket
  FeatureVocabulary pos_unigrams;
  FeatureVocabulary pos_bigrams;
  FeatureVocabulary morph_tags;
  FeatureVocabulary dep_labels;
  FeatureVocabulary func_words;
  FeatureVocabulary transition_words;
};

inline constexpr std::array<std::string_view, 4> kAuxLengthFeatures = {
    "tokens", "types", "avg_sentence_length", "transitions"};

// Counts every feature group of a document. Immutable; safe to share.
class Featurizer {
 public:
  // Throws Error if a punctuation entry is not a single code point or the
  // emoji vocabulary lacks its OOV bucket.
  Featurizer(VocabularySet vocabularies, PatternSet patterns,
             bool aux_length = false);

  GroupCounts CountPunctuation(const ParsedDocument& doc) const;
  GroupCounts CountEmojis(const ParsedDocument& doc) const;
  GroupCounts CountPosUnigrams(const ParsedDocument& doc) const;
  GroupCounts CountPosBigrams(const ParsedDocument& doc) const;
  GroupCounts CountMorphTags(const ParsedDocument& doc) const;
  GroupCounts CountDepLabels(const ParsedDocument& doc) const;
  GroupCounts CountConstructions(const ParsedDocument& doc) const;
  GroupCounts CountFunctionWords(const ParsedDocument& doc) const;
  GroupCounts CountTransitionWords(const ParsedDocument& doc) const;
  GroupCounts CountAuxLength(const ParsedDocument& doc) const;

  // Layout order; aux_length last when enabled.
  std::vector<GroupCounts> CountAll(const ParsedDocument& doc) const;

  std::vector<FeatureGroup> groups() const;
  const FeatureVocabulary& vocabulary(FeatureGroup group) const;
  const PatternSet& patterns() const { return patterns_; }
  bool aux_length() const { return aux_length_; }

 private:
  // Index of the longest transition entry that starts the sentence.
  std::optional<size_t> MatchTransition(const Sentence& sentence) const;

  VocabularySet vocab_;
  PatternSet patterns_;
  FeatureVocabulary constructions_;
  FeatureVocabulary aux_;
  bool aux_length_;
  std::unordered_map<char32_t, size_t> punct_index_;
  std::unordered_map<std::string, size_t> func_index_;        // folded
  std::unordered_map<std::string, size_t> transition_index_;  // folded, ' '-joined
  size_t max_transition_tokens_ = 0;
};

}  // namespace stylevec

#endif  // STYLEVEC_FEATURIZERS_H_
