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

#include "stylevec/srm.h"

#include <boost/regex.hpp>

#include <fstream>
#include <istream>
#include <map>
#include <set>

#include "stylevec/error.h"

namespace stylevec {

struct PatternSet::Compiled {
  std::vector<boost::regex> regexes;
};

namespace {

bool NeedsSanitizing(char c) {
  return c == '-' || c == '(' || c == ')' || c == ' ' || c == '\t' ||
         c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

void AppendNode(const Sentence& sentence,
                const std::vector<std::vector<int>>& children, int node,
                std::string* out) {
  const Token& t = sentence[node];
  out->push_back('(');
  *out += SanitizeField(t.surface);
  out->push_back('-');
  *out += SanitizeField(t.lemma);
  out->push_back('-');
  *out += SanitizeField(t.xpos);
  out->push_back('-');
  *out += SanitizeField(t.deprel);
  for (int child : children[node]) AppendNode(sentence, children, child, out);
  out->push_back(')');
}

class LinearParser {
 public:
  explicit LinearParser(std::string_view text) : text_(text) {}

  TreeNode Parse() {
    TreeNode root = Node();
    if (pos_ != text_.size()) Fail("trailing characters after the root group");
    return root;
  }

 private:
  TreeNode Node() {
    if (pos_ >= text_.size() || text_[pos_] != '(') Fail("expected '('");
    ++pos_;
    size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != '(' && text_[pos_] != ')') ++pos_;
    std::string_view prefix = text_.substr(start, pos_ - start);
    std::vector<std::string_view> fields;
    size_t from = 0;
    while (true) {
      size_t dash = prefix.find('-', from);
      if (dash == std::string_view::npos) {
        fields.push_back(prefix.substr(from));
        break;
      }
      fields.push_back(prefix.substr(from, dash - from));
      from = dash + 1;
    }
    if (fields.size() != 4) Fail("node must have exactly four fields");
    TreeNode node{std::string(fields[0]), std::string(fields[1]),
                  std::string(fields[2]), std::string(fields[3]), {}};
    while (pos_ < text_.size() && text_[pos_] == '(') node.children.push_back(Node());
    if (pos_ >= text_.size() || text_[pos_] != ')') Fail("expected ')'");
    ++pos_;
    return node;
  }

  [[noreturn]] void Fail(const std::string& what) const {
    throw Error("linearized tree, offset " + std::to_string(pos_) + ": " + what);
  }

  std::string_view text_;
  size_t pos_ = 0;
};

std::string_view TrimRight(std::string_view s) {
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::string_view TrimLeft(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  return s;
}

// Splits off the next whitespace-delimited word.
std::string_view NextWord(std::string_view* rest) {
  *rest = TrimLeft(*rest);
  size_t end = 0;
  while (end < rest->size() && (*rest)[end] != ' ' && (*rest)[end] != '\t') ++end;
  std::string_view word = rest->substr(0, end);
  rest->remove_prefix(end);
  return word;
}

}  // namespace

std::string SanitizeField(std::string_view field) {
  std::string out(field);
  for (char& c : out) {
    if (NeedsSanitizing(c)) c = '_';
  }
  return out;
}

LinearizedSentence Linearize(const Sentence& sentence, size_t sentence_index) {
  ValidateSentence(sentence);
  const int n = static_cast<int>(sentence.size());
  std::vector<std::vector<int>> children(n);
  int root = 0;
  for (int i = 0; i < n; ++i) {
    if (sentence[i].IsRoot(i)) {
      root = i;
    } else {
      children[sentence[i].head].push_back(i);  // ascending token order
    }
  }
  LinearizedSentence out;
  out.sentence_index = sentence_index;
  AppendNode(sentence, children, root, &out.text);
  return out;
}

TreeNode ParseLinearized(std::string_view text) { return LinearParser(text).Parse(); }

PatternSet::PatternSet() : compiled_(std::make_shared<Compiled>()) {}

PatternSet::PatternSet(std::string language,
                       std::vector<ConstructionPattern> patterns)
    : language_(std::move(language)), patterns_(std::move(patterns)) {
  auto compiled = std::make_shared<Compiled>();
  std::set<std::string> names;
  for (const auto& p : patterns_) {
    if (p.name.empty()) throw Error("construction pattern with an empty name");
    if (!names.insert(p.name).second) {
      throw Error("duplicate construction pattern '" + p.name + "'");
    }
    if (p.language != language_) {
      throw Error("construction pattern '" + p.name + "' has language '" +
                  p.language + "' but the pattern set is '" + language_ + "'");
    }
    try {
      compiled->regexes.emplace_back(p.regex_source, boost::regex::perl);
    } catch (const boost::regex_error& e) {
      throw Error("construction pattern '" + p.name + "': invalid regex: " +
                  e.what());
    }
  }
  compiled_ = std::move(compiled);
}

std::vector<size_t> PatternSet::CountMatches(std::string_view text) const {
  std::vector<size_t> counts(patterns_.size(), 0);
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  for (size_t i = 0; i < patterns_.size(); ++i) {
    try {
      boost::cregex_iterator it(begin, end, compiled_->regexes[i]);
      for (; it != boost::cregex_iterator(); ++it) ++counts[i];
    } catch (const std::runtime_error& e) {
      throw Error("construction pattern '" + patterns_[i].name +
                  "': matching failed: " + e.what());
    }
  }
  return counts;
}

PatternSet CompilePatternSet(std::istream& pack, std::string_view source_name) {
  std::string declared;
  std::vector<ConstructionPattern> patterns;
  std::string line;
  std::string record;
  size_t lineno = 0;
  size_t record_line = 0;
  auto where = [&](size_t n) {
    return std::string(source_name) + ":" + std::to_string(n) + ": ";
  };
  auto flush = [&]() {
    std::string_view rest(record);
    ConstructionPattern p;
    p.name = std::string(NextWord(&rest));
    p.language = std::string(NextWord(&rest));
    p.regex_source = std::string(TrimRight(TrimLeft(rest)));
    if (p.name.empty() || p.language.empty() || p.regex_source.empty()) {
      throw Error(where(record_line) + "expected <name> <language> <regex>");
    }
    patterns.push_back(std::move(p));
    record.clear();
  };
  while (std::getline(pack, line)) {
    ++lineno;
    std::string_view view = TrimRight(line);
    bool continuing = !record.empty();
    if (!continuing) {
      std::string_view body = TrimLeft(view);
      if (body.empty() || body.front() == '#') continue;
      if (body.starts_with("language")) {
        std::string_view rest = body.substr(8);
        rest = TrimLeft(rest);
        if (!rest.empty() && rest.front() == '=') {
          declared = std::string(TrimLeft(rest.substr(1)));
          continue;
        }
      }
      record_line = lineno;
      view = body;
    } else {
      view = TrimLeft(view);
    }
    bool more = view.size() >= 2 && view.back() == '\\' &&
                (view[view.size() - 2] == ' ' || view[view.size() - 2] == '\t');
    if (more) view = TrimRight(view.substr(0, view.size() - 1));
    record += view;
    if (!more) flush();
  }
  if (!record.empty()) flush();

  std::string language = declared;
  if (language.empty() && !patterns.empty()) language = patterns.front().language;
  for (const auto& p : patterns) {
    if (p.language != language) {
      throw Error(std::string(source_name) + ": construction '" + p.name +
                  "' has language '" + p.language + "' but the pack is '" +
                  language + "'");
    }
  }
  return PatternSet(std::move(language), std::move(patterns));
}

PatternSet LoadPatternPack(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open pattern pack " + path.string());
  return CompilePatternSet(in, path.string());
}

std::vector<std::pair<std::string, size_t>> MatchConstructions(
    const ParsedDocument& doc, const PatternSet& patterns) {
  std::vector<size_t> totals(patterns.size(), 0);
  for (size_t s = 0; s < doc.sentences.size(); ++s) {
    LinearizedSentence lin = Linearize(doc.sentences[s], s);
    auto counts = patterns.CountMatches(lin.text);
    for (size_t i = 0; i < totals.size(); ++i) totals[i] += counts[i];
  }
  std::vector<std::pair<std::string, size_t>> out;
  out.reserve(totals.size());
  for (size_t i = 0; i < totals.size(); ++i) {
    out.emplace_back(patterns.patterns()[i].name, totals[i]);
  }
  return out;
}

bool ConformanceReport::AllPassed() const {
  if (!under_covered.empty()) return false;
  for (const auto& c : cases) {
    if (!c.passed) return false;
  }
  return true;
}

ConformanceReport RunConformance(const PatternSet& patterns,
                                 std::span<const ParsedDocument> corpus) {
  std::map<std::string, size_t> index;
  for (size_t i = 0; i < patterns.size(); ++i) {
    index.emplace(patterns.patterns()[i].name, i);
  }
  ConformanceReport report;
  for (const auto& doc : corpus) {
    ConformanceCase c;
    c.doc_id = doc.doc_id;
    size_t slash = doc.doc_id.find('/');
    size_t slash2 = slash == std::string::npos ? slash : doc.doc_id.find('/', slash + 1);
    c.construction = doc.doc_id.substr(0, slash);
    std::string kind = slash == std::string::npos
                           ? std::string()
                           : doc.doc_id.substr(slash + 1, slash2 == std::string::npos
                                                              ? std::string::npos
                                                              : slash2 - slash - 1);
    c.expect_match = kind == "pos";
    for (size_t s = 0; s < doc.sentences.size(); ++s) {
      if (!c.linearized.empty()) c.linearized += ' ';
      c.linearized += Linearize(doc.sentences[s], s).text;
    }
    auto it = index.find(c.construction);
    if (it != index.end() && (kind == "pos" || kind == "neg")) {
      for (const auto& [name, count] : MatchConstructions(doc, patterns)) {
        if (name == c.construction) c.count = count;
      }
      c.passed = c.expect_match ? c.count > 0 : c.count == 0;
    }
    report.cases.push_back(std::move(c));
  }
  for (const auto& p : patterns.patterns()) {
    int pos = 0, neg = 0;
    for (const auto& c : report.cases) {
      if (c.construction != p.name) continue;
      if (c.expect_match) {
        ++pos;
      } else {
        ++neg;
      }
    }
    if (pos < 2 || neg < 2) report.under_covered.push_back(p.name);
  }
  return report;
}

}  // namespace stylevec
