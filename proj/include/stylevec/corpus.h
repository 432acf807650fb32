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

#ifndef STYLEVEC_CORPUS_H_
#define STYLEVEC_CORPUS_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace stylevec {

// UD v2 coarse tags plus SPACE, in vocabulary order.
inline constexpr std::array<std::string_view, 18> kUniversalPosTags = {
    "ADJ",  "ADP",  "ADV",   "AUX",   "CCONJ", "DET",  "INTJ", "NOUN", "NUM",
    "PART", "PRON", "PROPN", "PUNCT", "SCONJ", "SYM",  "VERB", "X",    "SPACE"};

bool IsUniversalPosTag(std::string_view tag);

struct Token {
  std::string surface;
  std::string lemma;
  std::string upos;
  std::string xpos;
  // "Key=Value" features, sorted as in CoNLL-U FEATS.
  std::vector<std::string> morph;
  // 0-based head index within the sentence; a root token points at itself.
  int head = 0;
  std::string deprel;

  bool IsRoot(int self_index) const { return head == self_index; }
  bool operator==(const Token&) const = default;
};

using Sentence = std::vector<Token>;

struct ParsedDocument {
  std::string doc_id;
  std::string author_id;
  std::string label;
  std::vector<Sentence> sentences;
  // Original text; punctuation and emoji counters read this rather than
  // tokens because tokenizers may normalize symbols away.
  std::string raw_text;

  size_t TokenCount() const;
};

struct DocumentPair {
  std::string doc_a;
  std::string doc_b;
  bool same_author = false;

  bool operator==(const DocumentPair&) const = default;
};

// Throws Error unless every head is in range, there is exactly one root and
// all head chains reach it (no cycles).
void ValidateSentence(const Sentence& sentence);

// ---------------------------------------------------------------------------
// CoNLL-U

struct IngestError {
  size_t line = 0;  // 1-based; 0 when the error is document-level
  std::string doc_id;
  std::string message;
};

struct ConlluReadResult {
  std::vector<ParsedDocument> documents;
  std::vector<IngestError> errors;
};

// Reads UD-style CoNLL-U. `# newdoc id = ...` starts a document and `# text`
// comments are joined into raw_text. Multiword ranges (3-4) and empty nodes
// (5.1) are skipped. A document with any malformed row or invalid tree is
// dropped and reported in `errors`; the rest are still returned.
ConlluReadResult ReadConllu(std::istream& in);

void WriteConllu(std::span<const ParsedDocument> docs, std::ostream& out);

// ---------------------------------------------------------------------------
// JSONL document metadata

struct DocumentRecord {
  std::string doc_id;
  std::string author_id;
  std::string label;
  std::string text;
  size_t line = 0;
};

// One JSON object per line with at least "doc_id" and "text"; "author_id"
// and "label" are optional. Throws Error on malformed lines and duplicate ids.
std::vector<DocumentRecord> ReadDocumentsJsonl(std::istream& in);

// Copies author/label onto matching documents. A non-empty record text
// replaces raw_text. Returns the number of documents that were matched.
size_t JoinMetadata(std::span<ParsedDocument> docs,
                    std::span<const DocumentRecord> records);

// ---------------------------------------------------------------------------
// Verification pairs

struct AuthoredDoc {
  std::string doc_id;
  std::string author_id;
};

// Samples n_same same-author and n_diff different-author unordered pairs
// uniformly without replacement. Same-author pairs come first. Documents
// with an empty author id are ignored. Deterministic for a fixed seed.
std::vector<DocumentPair> GeneratePairs(std::span<const AuthoredDoc> docs,
                                        size_t n_same, size_t n_diff,
                                        uint64_t seed);
std::vector<DocumentPair> GeneratePairs(std::span<const ParsedDocument> docs,
                                        size_t n_same, size_t n_diff,
                                        uint64_t seed);

// {"a":..,"b":..,"same":true|false} per line.
void WritePairsJsonl(std::span<const DocumentPair> pairs, std::ostream& out);
std::vector<DocumentPair> ReadPairsJsonl(std::istream& in);

}  // namespace stylevec

#endif  // STYLEVEC_CORPUS_H_
