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

#include "stylevec/featurizers.h"

#include <numeric>
#include <set>

#include "stylevec/error.h"
#include "stylevec/unicode_text.h"

namespace stylevec {
namespace {

GroupCounts Empty(FeatureGroup group, const FeatureVocabulary& vocab) {
  GroupCounts g;
  g.group = group;
  g.counts.assign(vocab.size(), 0.0);
  return g;
}

std::vector<std::string> SplitWords(std::string_view s) {
  std::vector<std::string> words;
  size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) words.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return words;
}

}  // namespace

double GroupCounts::Total() const {
  return std::accumulate(counts.begin(), counts.end(), 0.0);
}

std::vector<double> NormalizeGroup(const GroupCounts& counts,
                                   NormalizationMode mode) {
  if (counts.group == FeatureGroup::kAuxLength) return counts.counts;
  double divisor = mode == NormalizationMode::kGroupTotal ? counts.Total()
                                                          : counts.denominator;
  std::vector<double> out(counts.counts.size(), 0.0);
  if (divisor == 0) return out;
  for (size_t i = 0; i < out.size(); ++i) out[i] = counts.counts[i] / divisor;
  return out;
}

Featurizer::Featurizer(VocabularySet vocabularies, PatternSet patterns,
                       bool aux_length)
    : vocab_(std::move(vocabularies)),
      patterns_(std::move(patterns)),
      aux_length_(aux_length) {
  std::vector<std::string> names;
  for (const auto& p : patterns_.patterns()) names.push_back(p.name);
  constructions_ = FeatureVocabulary::FromEntries(FeatureGroup::kConstructions,
                                                  std::move(names));
  aux_ = FeatureVocabulary::FromEntries(
      FeatureGroup::kAuxLength,
      std::vector<std::string>(kAuxLengthFeatures.begin(), kAuxLengthFeatures.end()));

  for (size_t i = 0; i < vocab_.punctuation.size(); ++i) {
    auto cps = DecodeUtf8(vocab_.punctuation.entries()[i]);
    if (cps.size() != 1) {
      throw Error("punctuation entry '" + vocab_.punctuation.entries()[i] +
                  "' is not a single character");
    }
    punct_index_.emplace(cps[0], i);
  }
  if (!vocab_.emojis.has_oov()) {
    throw Error("emoji vocabulary must have an OOV bucket");
  }
  for (size_t i = 0; i < vocab_.func_words.size(); ++i) {
    func_index_.emplace(FoldCase(vocab_.func_words.entries()[i]), i);
  }
  for (size_t i = 0; i < vocab_.transition_words.size(); ++i) {
    std::vector<std::string> words =
        SplitWords(FoldCase(vocab_.transition_words.entries()[i]));
    std::string key;
    for (const auto& w : words) {
      if (!key.empty()) key += ' ';
      key += w;
    }
    max_transition_tokens_ = std::max(max_transition_tokens_, words.size());
    transition_index_.emplace(std::move(key), i);
  }
}

GroupCounts Featurizer::CountPunctuation(const ParsedDocument& doc) const {
  GroupCounts g = Empty(FeatureGroup::kPunctuation, vocab_.punctuation);
  for (char32_t cp : DecodeUtf8(doc.raw_text)) {
    if (IsPunctuation(cp)) g.denominator += 1;
    auto it = punct_index_.find(cp);
    if (it != punct_index_.end()) g.counts[it->second] += 1;
  }
  return g;
}

GroupCounts Featurizer::CountEmojis(const ParsedDocument& doc) const {
  GroupCounts g = Empty(FeatureGroup::kEmojis, vocab_.emojis);
  for (const auto& seq : SegmentEmojis(doc.raw_text)) {
    auto idx = vocab_.emojis.Find(seq);
    g.counts[idx ? *idx : vocab_.emojis.oov_index()] += 1;
    g.denominator += 1;
  }
  return g;
}

GroupCounts Featurizer::CountPosUnigrams(const ParsedDocument& doc) const {
  GroupCounts g = Empty(FeatureGroup::kPosUnigrams, vocab_.pos_unigrams);
  for (const auto& s : doc.sentences) {
    for (const auto& t : s) {
      if (auto idx = vocab_.pos_unigrams.Find(t.upos)) g.counts[*idx] += 1;
      g.denominator += 1;
    }
  }
  return g;
}

GroupCounts Featurizer::CountPosBigrams(const ParsedDocument& doc) const {
  GroupCounts g = Empty(FeatureGroup::kPosBigrams, vocab_.pos_bigrams);
  std::string key;
  for (const auto& s : doc.sentences) {
    for (size_t i = 1; i < s.size(); ++i) {
      key = s[i - 1].upos;
      key += ' ';
      key += s[i].upos;
      if (auto idx = vocab_.pos_bigrams.Find(key)) g.counts[*idx] += 1;
      g.denominator += 1;
    }
  }
  return g;
}

GroupCounts Featurizer::CountMorphTags(const ParsedDocument& doc) const {
  GroupCounts g = Empty(FeatureGroup::kMorphTags, vocab_.morph_tags);
  for (const auto& s : doc.sentences) {
    for (const auto& t : s) {
      for (const auto& feat : t.morph) {
        if (auto idx = vocab_.morph_tags.Find(feat)) {
          g.counts[*idx] += 1;
          g.denominator += 1;
        }
      }
    }
  }
  return g;
}

GroupCounts Featurizer::CountDepLabels(const ParsedDocument& doc) const {
  GroupCounts g = Empty(FeatureGroup::kDepLabels, vocab_.dep_labels);
  for (const auto& s : doc.sentences) {
    for (const auto& t : s) {
      if (auto idx = vocab_.dep_labels.Find(t.deprel)) g.counts[*idx] += 1;
      g.denominator += 1;
    }
  }
  return g;
}

GroupCounts Featurizer::CountConstructions(const ParsedDocument& doc) const {
  GroupCounts g = Empty(FeatureGroup::kConstructions, constructions_);
  auto matches = MatchConstructions(doc, patterns_);
  for (size_t i = 0; i < matches.size(); ++i) {
    g.counts[i] = static_cast<double>(matches[i].second);
  }
  g.denominator = static_cast<double>(doc.sentences.size());
  return g;
}

GroupCounts Featurizer::CountFunctionWords(const ParsedDocument& doc) const {
  GroupCounts g = Empty(FeatureGroup::kFuncWords, vocab_.func_words);
  for (const auto& s : doc.sentences) {
    for (const auto& t : s) {
      auto it = func_index_.find(FoldCase(t.surface));
      if (it != func_index_.end()) g.counts[it->second] += 1;
      g.denominator += 1;
    }
  }
  return g;
}

std::optional<size_t> Featurizer::MatchTransition(const Sentence& sentence) const {
  size_t limit = std::min(max_transition_tokens_, sentence.size());
  std::vector<std::string> prefixes;
  std::string key;
  for (size_t k = 0; k < limit; ++k) {
    if (k) key += ' ';
    key += FoldCase(sentence[k].surface);
    prefixes.push_back(key);
  }
  for (size_t k = prefixes.size(); k-- > 0;) {
    auto it = transition_index_.find(prefixes[k]);
    if (it != transition_index_.end()) return it->second;
  }
  return std::nullopt;
}

GroupCounts Featurizer::CountTransitionWords(const ParsedDocument& doc) const {
  GroupCounts g = Empty(FeatureGroup::kTransitionWords, vocab_.transition_words);
  for (const auto& s : doc.sentences) {
    if (auto idx = MatchTransition(s)) g.counts[*idx] += 1;
  }
  g.denominator = static_cast<double>(doc.sentences.size());
  return g;
}

GroupCounts Featurizer::CountAuxLength(const ParsedDocument& doc) const {
  GroupCounts g = Empty(FeatureGroup::kAuxLength, aux_);
  std::set<std::string> types;
  double transitions = 0;
  for (const auto& s : doc.sentences) {
    for (const auto& t : s) types.insert(FoldCase(t.surface));
    if (MatchTransition(s)) transitions += 1;
  }
  double tokens = static_cast<double>(doc.TokenCount());
  g.counts[0] = tokens;
  g.counts[1] = static_cast<double>(types.size());
  g.counts[2] = doc.sentences.empty() ? 0.0 : tokens / doc.sentences.size();
  g.counts[3] = transitions;
  g.denominator = 1;
  return g;
}

std::vector<GroupCounts> Featurizer::CountAll(const ParsedDocument& doc) const {
  std::vector<GroupCounts> out;
  out.reserve(10);
  out.push_back(CountPunctuation(doc));
  out.push_back(CountEmojis(doc));
  out.push_back(CountPosUnigrams(doc));
  out.push_back(CountPosBigrams(doc));
  out.push_back(CountMorphTags(doc));
  out.push_back(CountDepLabels(doc));
  out.push_back(CountConstructions(doc));
  out.push_back(CountFunctionWords(doc));
  out.push_back(CountTransitionWords(doc));
  if (aux_length_) out.push_back(CountAuxLength(doc));
  return out;
}

std::vector<FeatureGroup> Featurizer::groups() const {
  std::vector<FeatureGroup> g(kCoreGroups.begin(), kCoreGroups.end());
  if (aux_length_) g.push_back(FeatureGroup::kAuxLength);
  return g;
}

const FeatureVocabulary& Featurizer::vocabulary(FeatureGroup group) const {
  switch (group) {
    case FeatureGroup::kPunctuation: return vocab_.punctuation;
    case FeatureGroup::kEmojis: return vocab_.emojis;
    case FeatureGroup::kPosUnigrams: return vocab_.pos_unigrams;
    case FeatureGroup::kPosBigrams: return vocab_.pos_bigrams;
    case FeatureGroup::kMorphTags: return vocab_.morph_tags;
    case FeatureGroup::kDepLabels: return vocab_.dep_labels;
    case FeatureGroup::kConstructions: return constructions_;
    case FeatureGroup::kFuncWords: return vocab_.func_words;
    case FeatureGroup::kTransitionWords: return vocab_.transition_words;
    case FeatureGroup::kAuxLength: return aux_;
  }
  throw Error("unknown feature group");
}

}  // namespace stylevec
