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

#ifndef STYLEVEC_TESTS_SUPPORT_SYNTHETIC_H_
#define STYLEVEC_TESTS_SUPPORT_SYNTHETIC_H_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "stylevec/corpus.h"

namespace stylevec::testing {

// Builds one sentence token by token; heads are attached afterwards.
class SentenceBuilder {
 public:
  int Add(const std::string& surface, const std::string& lemma, const std::string& upos,
          const std::string& xpos, const std::string& morph = "");
  void Attach(int child, int head, const std::string& deprel);
  void Root(int index, const std::string& deprel = "ROOT");
  size_t size() const { return tokens_.size(); }

  Sentence Build() const;
  // Surfaces joined by spaces, with no space before closing punctuation.
  std::string Text() const;

 private:
  std::vector<Token> tokens_;
};

// "It was a moral debt that I had inherited from my mother." with the
// parse shown in the SRM documentation example (the final period hangs off
// "mother").
Sentence MoralDebtSentence();
ParsedDocument DocumentFromSentences(const std::string& doc_id,
                                     const std::vector<Sentence>& sentences,
                                     const std::vector<std::string>& texts);

struct StyleKnobs {
  double exclamation = 0;   // sentence ends with '!'
  double transition = 0;    // sentence starts with a transition word
  double passive = 0;       // passive main clause
  double subordinate = 0;   // adverbial or complement clause
};

// Random English-like documents with ClearNLP-style labels. Deterministic
// for a given rng state.
ParsedDocument GenerateDocument(const std::string& doc_id, const StyleKnobs& knobs,
                                int n_sentences, std::mt19937_64& rng);

// Two families of 50 documents: family A uses exclamations, sentence-initial
// transitions and passives heavily; family B never does. Author ids are
// "A" and "B".
std::vector<ParsedDocument> AvCorpus(uint64_t seed, int docs_per_family = 50);

// Labels "human" and "generated"; the generator never uses '!' and produces
// many subordinate clauses.
std::vector<ParsedDocument> DetectionCorpus(uint64_t seed, int docs_per_class);

}  // namespace stylevec::testing

#endif  // STYLEVEC_TESTS_SUPPORT_SYNTHETIC_H_
