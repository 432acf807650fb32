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

#ifndef STYLEVEC_SRM_H_
#define STYLEVEC_SRM_H_

// Syntax regex matching: dependency trees are serialized to a parenthesized
// string and construction patterns are regular expressions over that string.
//
//   (was-be-VBD-ROOT(It-it-PRP-nsubj)(debt-debt-NN-attr(a-a-DT-det)...))
//
// Every node is "(" surface "-" lemma "-" xpos "-" deprel, followed by its
// children in token order and ")". Literal '-', '(', ')' and whitespace inside
// a field become '_' so each node prefix has exactly three separators.

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stylevec/corpus.h"

namespace stylevec {

struct LinearizedSentence {
  std::string text;
  size_t sentence_index = 0;
};

std::string SanitizeField(std::string_view field);

// Throws Error on an invalid tree.
LinearizedSentence Linearize(const Sentence& sentence, size_t sentence_index = 0);

// Inverse of Linearize (over sanitized fields).
struct TreeNode {
  std::string surface;
  std::string lemma;
  std::string xpos;
  std::string deprel;
  std::vector<TreeNode> children;

  bool operator==(const TreeNode&) const = default;
};
TreeNode ParseLinearized(std::string_view text);

struct ConstructionPattern {
  std::string name;
  std::string regex_source;
  std::string language;
};

// Ordered, compiled construction patterns. Immutable and cheap to copy; the
// order fixes the constructions group layout.
class PatternSet {
 public:
  PatternSet();
  // Compiles every pattern; throws Error naming the first pattern that fails
  // to compile or repeats a name. Mixed language tags are rejected.
  PatternSet(std::string language, std::vector<ConstructionPattern> patterns);

  const std::string& language() const { return language_; }
  size_t size() const { return patterns_.size(); }
  bool empty() const { return patterns_.empty(); }
  const std::vector<ConstructionPattern>& patterns() const { return patterns_; }

  // Non-overlapping match count of each pattern in `text`, in pattern order.
  std::vector<size_t> CountMatches(std::string_view text) const;

 private:
  struct Compiled;
  std::string language_;
  std::vector<ConstructionPattern> patterns_;
  std::shared_ptr<const Compiled> compiled_;
};

// Pack format, one record per construction:
//
//   language = en-clearnlp
//   it_cleft  en-clearnlp  \([^-]*-be-... \   <- continues
//       .*\([iI]t-it-PRP-nsubj\)...
//
// A record line ending in " \" continues on the next line with leading
// whitespace removed. '#' starts a comment line.
PatternSet CompilePatternSet(std::istream& pack, std::string_view source_name);
PatternSet LoadPatternPack(const std::filesystem::path& path);

// Per-construction match totals over all sentences of `doc`, in pattern order.
std::vector<std::pair<std::string, size_t>> MatchConstructions(
    const ParsedDocument& doc, const PatternSet& patterns);

// Conformance corpus: documents named "<construction>/pos/<n>" must match
// the construction, "<construction>/neg/<n>" must not.
struct ConformanceCase {
  std::string doc_id;
  std::string construction;
  bool expect_match = false;
  size_t count = 0;
  bool passed = false;
  std::string linearized;
};

struct ConformanceReport {
  std::vector<ConformanceCase> cases;
  // Constructions in the pack lacking 2 positives and 2 negatives.
  std::vector<std::string> under_covered;

  bool AllPassed() const;
};

ConformanceReport RunConformance(const PatternSet& patterns,
                                 std::span<const ParsedDocument> corpus);

}  // namespace stylevec

#endif  // STYLEVEC_SRM_H_
