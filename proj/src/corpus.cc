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

#include "stylevec/corpus.h"

#include <algorithm>
#include <charconv>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"
#include "stylevec/error.h"
#include "stylevec/random.h"

namespace stylevec {
namespace {

using json = nlohmann::json;

std::vector<std::string_view> SplitTabs(std::string_view line) {
  std::vector<std::string_view> out;
  size_t start = 0;
  while (true) {
    size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

std::optional<int> ParseInt(std::string_view s) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

// Parses "# key = value" comments; returns false for other comment shapes.
bool ParseComment(std::string_view line, std::string_view* key,
                  std::string_view* value) {
  line.remove_prefix(1);
  line = Trim(line);
  size_t eq = line.find('=');
  if (eq == std::string_view::npos) {
    *key = line;
    *value = {};
    return true;
  }
  *key = Trim(line.substr(0, eq));
  *value = Trim(line.substr(eq + 1));
  return true;
}

bool NoSpaceAfter(std::string_view misc) {
  size_t start = 0;
  while (start <= misc.size()) {
    size_t bar = misc.find('|', start);
    std::string_view item = misc.substr(start, bar == std::string_view::npos
                                                   ? std::string_view::npos
                                                   : bar - start);
    if (item == "SpaceAfter=No") return true;
    if (bar == std::string_view::npos) break;
    start = bar + 1;
  }
  return false;
}

struct PendingRow {
  int id = 0;
  int head = 0;
  Token token;
  bool space_after = true;
};

struct MultiwordSpan {
  int first = 0;
  int last = 0;
  std::string surface;
  bool space_after = true;
};

class ConlluReader {
 public:
  explicit ConlluReader(ConlluReadResult* result) : result_(result) {}

  void Line(std::string_view line, size_t lineno) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (Trim(line).empty()) {
      FinishSentence(lineno);
      return;
    }
    if (line.front() == '#') {
      Comment(line, lineno);
      return;
    }
    Row(line, lineno);
  }

  void Finish(size_t lineno) {
    FinishSentence(lineno);
    FinishDocument();
  }

 private:
  void Comment(std::string_view line, size_t lineno) {
    std::string_view key, value;
    ParseComment(line, &key, &value);
    if (key.starts_with("newdoc")) {
      FinishSentence(lineno);
      FinishDocument();
      std::string id(value);
      if (key != "newdoc id" && key != "newdoc") id.clear();
      StartDocument(id.empty() ? NextImplicitId() : id);
    } else if (key == "text") {
      sentence_text_ = std::string(value);
      has_text_ = true;
    } else if (key == "author_id" && doc_) {
      doc_->author_id = std::string(value);
    } else if (key == "label" && doc_) {
      doc_->label = std::string(value);
    }
  }

  void Row(std::string_view line, size_t lineno) {
    if (!doc_) StartDocument(NextImplicitId());
    if (sentence_start_line_ == 0) sentence_start_line_ = lineno;
    auto cols = SplitTabs(line);
    if (cols.size() != 10) {
      Fail(lineno, "expected 10 tab-separated columns, found " +
                       std::to_string(cols.size()));
      return;
    }
    std::string_view id = cols[0];
    if (id.find('.') != std::string_view::npos) return;  // empty node
    if (size_t dash = id.find('-'); dash != std::string_view::npos) {
      auto first = ParseInt(id.substr(0, dash));
      auto last = ParseInt(id.substr(dash + 1));
      if (!first || !last || *last < *first) {
        Fail(lineno, "malformed multiword range '" + std::string(id) + "'");
        return;
      }
      spans_.push_back({*first, *last, std::string(cols[1]), !NoSpaceAfter(cols[9])});
      return;
    }
    auto num = ParseInt(id);
    if (!num || *num != static_cast<int>(rows_.size()) + 1) {
      Fail(lineno, "unexpected token id '" + std::string(id) + "'");
      return;
    }
    auto head = ParseInt(cols[6]);
    if (!head || *head < 0) {
      Fail(lineno, "malformed head '" + std::string(cols[6]) + "'");
      return;
    }
    if (!IsUniversalPosTag(cols[3])) {
      Fail(lineno, "UPOS '" + std::string(cols[3]) + "' is not a UD tag");
      return;
    }
    PendingRow row;
    row.id = *num;
    row.head = *head;
    row.token.surface = std::string(cols[1]);
    row.token.lemma = std::string(cols[2]);
    row.token.upos = std::string(cols[3]);
    row.token.xpos = std::string(cols[4]);
    if (cols[5] != "_") {
      size_t start = 0;
      while (start <= cols[5].size()) {
        size_t bar = cols[5].find('|', start);
        auto feat = cols[5].substr(start, bar == std::string_view::npos
                                              ? std::string_view::npos
                                              : bar - start);
        if (!feat.empty()) row.token.morph.emplace_back(feat);
        if (bar == std::string_view::npos) break;
        start = bar + 1;
      }
    }
    row.token.deprel = std::string(cols[7]);
    row.space_after = !NoSpaceAfter(cols[9]);
    rows_.push_back(std::move(row));
  }

  void FinishSentence(size_t lineno) {
    if (rows_.empty()) {
      spans_.clear();
      has_text_ = false;
      sentence_start_line_ = 0;
      return;
    }
    Sentence sentence;
    sentence.reserve(rows_.size());
    const int n = static_cast<int>(rows_.size());
    bool ok = true;
    for (int i = 0; i < n; ++i) {
      Token t = std::move(rows_[i].token);
      int head = rows_[i].head;
      if (head > n) {
        Fail(sentence_start_line_, "head " + std::to_string(head) +
                                       " out of range for sentence of " +
                                       std::to_string(n) + " tokens");
        ok = false;
        break;
      }
      t.head = head == 0 ? i : head - 1;
      sentence.push_back(std::move(t));
    }
    if (ok) {
      try {
        ValidateSentence(sentence);
      } catch (const Error& e) {
        Fail(0, e.what());
        ok = false;
      }
    }
    if (ok && doc_ok_) {
      std::string text = has_text_ ? sentence_text_ : Reconstruct(sentence);
      if (!doc_->raw_text.empty()) doc_->raw_text += ' ';
      doc_->raw_text += text;
      doc_->sentences.push_back(std::move(sentence));
    }
    rows_.clear();
    spans_.clear();
    has_text_ = false;
    sentence_start_line_ = 0;
    (void)lineno;
  }

  std::string Reconstruct(const Sentence& sentence) const {
    std::string out;
    int i = 1;
    const int n = static_cast<int>(sentence.size());
    size_t span = 0;
    while (i <= n) {
      while (span < spans_.size() && spans_[span].first < i) ++span;
      bool space = true;
      if (span < spans_.size() && spans_[span].first == i) {
        out += spans_[span].surface;
        space = spans_[span].space_after;
        i = spans_[span].last + 1;
      } else {
        out += sentence[i - 1].surface;
        space = rows_space_after(i - 1);
        ++i;
      }
      if (i <= n && space) out += ' ';
    }
    return out;
  }

  bool rows_space_after(int index) const { return rows_[index].space_after; }

  void StartDocument(std::string id) {
    doc_ = ParsedDocument{};
    doc_->doc_id = std::move(id);
    doc_ok_ = true;
  }

  void FinishDocument() {
    if (doc_ && doc_ok_) result_->documents.push_back(std::move(*doc_));
    doc_.reset();
  }

  std::string NextImplicitId() {
    return "doc" + std::to_string(++implicit_docs_);
  }

  void Fail(size_t lineno, std::string message) {
    result_->errors.push_back(
        {lineno, doc_ ? doc_->doc_id : std::string(), std::move(message)});
    doc_ok_ = false;
  }

  ConlluReadResult* result_;
  std::optional<ParsedDocument> doc_;
  bool doc_ok_ = true;
  std::vector<PendingRow> rows_;
  std::vector<MultiwordSpan> spans_;
  std::string sentence_text_;
  bool has_text_ = false;
  size_t sentence_start_line_ = 0;
  int implicit_docs_ = 0;
};

// Floyd's algorithm: `n` distinct values from [0, range), ascending.
std::vector<uint64_t> SampleDistinct(uint64_t range, uint64_t n,
                                     std::mt19937_64& rng) {
  std::unordered_set<uint64_t> chosen;
  chosen.reserve(n * 2);
  for (uint64_t j = range - n; j < range; ++j) {
    uint64_t t = UniformBelow(rng, j + 1);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  std::vector<uint64_t> out(chosen.begin(), chosen.end());
  std::sort(out.begin(), out.end());
  return out;
}

// Pairs (p, q), p < q, over documents sorted by author group. For each p the
// partners are a contiguous range starting at partner_begin[p]; ranking is
// by p then partner.
struct PairRanking {
  std::vector<uint64_t> prefix;  // prefix[p] = pairs ranked before p
  std::vector<size_t> partner_begin;

  uint64_t total() const { return prefix.back(); }

  std::pair<size_t, size_t> Unrank(uint64_t r) const {
    auto it = std::upper_bound(prefix.begin(), prefix.end(), r);
    size_t p = static_cast<size_t>(it - prefix.begin()) - 1;
    return {p, partner_begin[p] + static_cast<size_t>(r - prefix[p])};
  }
};

}  // namespace

bool IsUniversalPosTag(std::string_view tag) {
  return std::find(kUniversalPosTags.begin(), kUniversalPosTags.end(), tag) !=
         kUniversalPosTags.end();
}

size_t ParsedDocument::TokenCount() const {
  size_t n = 0;
  for (const auto& s : sentences) n += s.size();
  return n;
}

void ValidateSentence(const Sentence& sentence) {
  const int n = static_cast<int>(sentence.size());
  if (n == 0) throw Error("empty sentence");
  int root = -1;
  for (int i = 0; i < n; ++i) {
    const int h = sentence[i].head;
    if (h < 0 || h >= n) {
      throw Error("token " + std::to_string(i + 1) + " has head out of range");
    }
    if (h == i) {
      if (root >= 0) {
        throw Error("sentence has more than one root (tokens " +
                    std::to_string(root + 1) + " and " + std::to_string(i + 1) +
                    ")");
      }
      root = i;
    }
  }
  if (root < 0) throw Error("sentence has no root");
  for (int i = 0; i < n; ++i) {
    int cur = i;
    int steps = 0;
    while (cur != root) {
      cur = sentence[cur].head;
      if (++steps > n) {
        throw Error("cyclic head links at token " + std::to_string(i + 1));
      }
    }
  }
}

ConlluReadResult ReadConllu(std::istream& in) {
  ConlluReadResult result;
  ConlluReader reader(&result);
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) reader.Line(line, ++lineno);
  reader.Finish(lineno + 1);
  return result;
}

void WriteConllu(std::span<const ParsedDocument> docs, std::ostream& out) {
  for (const auto& doc : docs) {
    out << "# newdoc id = " << doc.doc_id << '\n';
    if (!doc.author_id.empty()) out << "# author_id = " << doc.author_id << '\n';
    if (!doc.label.empty()) out << "# label = " << doc.label << '\n';
    for (const auto& sentence : doc.sentences) {
      for (size_t i = 0; i < sentence.size(); ++i) {
        const Token& t = sentence[i];
        out << i + 1 << '\t' << t.surface << '\t' << t.lemma << '\t' << t.upos
            << '\t' << t.xpos << '\t';
        if (t.morph.empty()) {
          out << '_';
        } else {
          for (size_t k = 0; k < t.morph.size(); ++k) {
            if (k) out << '|';
            out << t.morph[k];
          }
        }
        const int head = t.IsRoot(static_cast<int>(i)) ? 0 : t.head + 1;
        out << '\t' << head << '\t' << t.deprel << "\t_\t_\n";
      }
      out << '\n';
    }
  }
}

std::vector<DocumentRecord> ReadDocumentsJsonl(std::istream& in) {
  std::vector<DocumentRecord> records;
  std::unordered_map<std::string, size_t> seen;
  std::string line;
  size_t lineno = 0;
  auto field = [](const json& obj, const char* key) -> std::string {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return {};
    if (!it->is_string()) throw Error(std::string("field '") + key + "' must be a string");
    return it->get<std::string>();
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (Trim(line).empty()) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::exception& e) {
      throw Error("line " + std::to_string(lineno) + ": invalid JSON: " + e.what());
    }
    if (!obj.is_object()) {
      throw Error("line " + std::to_string(lineno) + ": expected a JSON object");
    }
    DocumentRecord rec;
    rec.line = lineno;
    try {
      if (!obj.contains("doc_id")) throw Error("missing 'doc_id'");
      if (!obj.contains("text")) throw Error("missing 'text'");
      rec.doc_id = field(obj, "doc_id");
      rec.text = field(obj, "text");
      rec.author_id = field(obj, "author_id");
      rec.label = field(obj, "label");
    } catch (const Error& e) {
      throw Error("line " + std::to_string(lineno) + ": " + e.what());
    }
    auto [it, inserted] = seen.emplace(rec.doc_id, lineno);
    if (!inserted) {
      throw Error("duplicate doc_id '" + rec.doc_id + "' on lines " +
                  std::to_string(it->second) + " and " + std::to_string(lineno));
    }
    records.push_back(std::move(rec));
  }
  return records;
}

size_t JoinMetadata(std::span<ParsedDocument> docs,
                    std::span<const DocumentRecord> records) {
  std::unordered_map<std::string_view, const DocumentRecord*> by_id;
  for (const auto& r : records) by_id.emplace(r.doc_id, &r);
  size_t matched = 0;
  for (auto& doc : docs) {
    auto it = by_id.find(doc.doc_id);
    if (it == by_id.end()) continue;
    const DocumentRecord& r = *it->second;
    if (!r.author_id.empty()) doc.author_id = r.author_id;
    if (!r.label.empty()) doc.label = r.label;
    if (!r.text.empty()) doc.raw_text = r.text;
    ++matched;
  }
  return matched;
}

std::vector<DocumentPair> GeneratePairs(std::span<const AuthoredDoc> docs,
                                        size_t n_same, size_t n_diff,
                                        uint64_t seed) {
  // Group documents by author, preserving first-appearance order.
  std::vector<size_t> order;
  std::vector<size_t> group_end;
  {
    std::map<std::string_view, size_t> group_of;
    std::vector<std::vector<size_t>> groups;
    for (size_t i = 0; i < docs.size(); ++i) {
      if (docs[i].author_id.empty()) continue;
      auto [it, inserted] = group_of.emplace(docs[i].author_id, groups.size());
      if (inserted) groups.emplace_back();
      groups[it->second].push_back(i);
    }
    for (const auto& g : groups) {
      order.insert(order.end(), g.begin(), g.end());
      for (size_t k = 0; k < g.size(); ++k) group_end.push_back(order.size());
    }
  }
  const size_t m = order.size();

  PairRanking same, diff;
  same.prefix.assign(1, 0);
  diff.prefix.assign(1, 0);
  for (size_t p = 0; p < m; ++p) {
    same.partner_begin.push_back(p + 1);
    same.prefix.push_back(same.prefix.back() + (group_end[p] - p - 1));
    diff.partner_begin.push_back(group_end[p]);
    diff.prefix.push_back(diff.prefix.back() + (m - group_end[p]));
  }
  if (n_same > same.total()) {
    throw Error("requested " + std::to_string(n_same) +
                " same-author pairs; maximum same-author pairs is " +
                std::to_string(same.total()));
  }
  if (n_diff > diff.total()) {
    throw Error("requested " + std::to_string(n_diff) +
                " different-author pairs; maximum different-author pairs is " +
                std::to_string(diff.total()));
  }

  std::mt19937_64 rng(seed);
  std::vector<DocumentPair> pairs;
  pairs.reserve(n_same + n_diff);
  auto emit = [&](const PairRanking& ranking, size_t n, bool same_author) {
    if (n == 0) return;
    for (uint64_t r : SampleDistinct(ranking.total(), n, rng)) {
      auto [p, q] = ranking.Unrank(r);
      size_t a = order[p], b = order[q];
      if (a > b) std::swap(a, b);
      pairs.push_back({docs[a].doc_id, docs[b].doc_id, same_author});
    }
  };
  emit(same, n_same, true);
  emit(diff, n_diff, false);
  return pairs;
}

std::vector<DocumentPair> GeneratePairs(std::span<const ParsedDocument> docs,
                                        size_t n_same, size_t n_diff,
                                        uint64_t seed) {
  std::vector<AuthoredDoc> ids;
  ids.reserve(docs.size());
  for (const auto& d : docs) ids.push_back({d.doc_id, d.author_id});
  return GeneratePairs(std::span<const AuthoredDoc>(ids), n_same, n_diff, seed);
}

void WritePairsJsonl(std::span<const DocumentPair> pairs, std::ostream& out) {
  for (const auto& p : pairs) {
    json obj = {{"a", p.doc_a}, {"b", p.doc_b}, {"same", p.same_author}};
    out << obj.dump() << '\n';
  }
}

std::vector<DocumentPair> ReadPairsJsonl(std::istream& in) {
  std::vector<DocumentPair> pairs;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (Trim(line).empty()) continue;
    try {
      json obj = json::parse(line);
      DocumentPair p;
      p.doc_a = obj.at("a").get<std::string>();
      p.doc_b = obj.at("b").get<std::string>();
      p.same_author = obj.at("same").get<bool>();
      if (p.doc_a == p.doc_b) throw Error("pair of a document with itself");
      pairs.push_back(std::move(p));
    } catch (const json::exception& e) {
      throw Error("pairs line " + std::to_string(lineno) + ": " + e.what());
    } catch (const Error& e) {
      throw Error("pairs line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return pairs;
}

}  // namespace stylevec
