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

#include "stylevec/vectorspace.h"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "stylevec/error.h"
#include "stylevec/io_util.h"

namespace stylevec {
namespace {

using nlohmann::json;

constexpr std::string_view kCsvMagic = "# stylevec ";

// Sum of f(i) for i in [lo, hi), pairwise so the result is independent of
// thread count and less sensitive to ordering than a running sum.
template <typename F>
double PairwiseSum(size_t lo, size_t hi, const F& f) {
  if (hi - lo <= 8) {
    double s = 0;
    for (size_t i = lo; i < hi; ++i) s += f(i);
    return s;
  }
  size_t mid = lo + (hi - lo) / 2;
  return PairwiseSum(lo, mid, f) + PairwiseSum(mid, hi, f);
}

void CheckSameNames(const StyleVector& a, const StyleVector& b) {
  if (a.values.size() != b.values.size() ||
      (a.names && b.names && a.names != b.names && *a.names != *b.names)) {
    throw Error("vectors '" + a.doc_id + "' and '" + b.doc_id +
                "' have different feature layouts");
  }
}

void CheckUniform(std::span<const StyleVector> vectors) {
  for (size_t i = 1; i < vectors.size(); ++i) {
    if (vectors[i].profile_hash != vectors[0].profile_hash) {
      throw Error("vectors '" + vectors[0].doc_id + "' and '" + vectors[i].doc_id +
                  "' come from different profiles");
    }
    if (vectors[i].stage != vectors[0].stage) {
      throw Error("vectors '" + vectors[0].doc_id + "' and '" + vectors[i].doc_id +
                  "' are at different stages");
    }
    CheckSameNames(vectors[0], vectors[i]);
  }
}

std::string CsvQuote(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> CsvSplit(std::string_view line, size_t lineno) {
  std::vector<std::string> fields;
  std::string cur;
  size_t i = 0;
  while (true) {
    cur.clear();
    if (i < line.size() && line[i] == '"') {
      ++i;
      while (true) {
        if (i >= line.size()) {
          throw Error("CSV line " + std::to_string(lineno) + ": unterminated quote");
        }
        if (line[i] == '"') {
          if (i + 1 < line.size() && line[i + 1] == '"') {
            cur += '"';
            i += 2;
            continue;
          }
          ++i;
          break;
        }
        cur += line[i++];
      }
      if (i < line.size() && line[i] != ',') {
        throw Error("CSV line " + std::to_string(lineno) +
                    ": text after closing quote");
      }
    } else {
      while (i < line.size() && line[i] != ',') cur += line[i++];
    }
    fields.push_back(cur);
    if (i >= line.size()) break;
    ++i;  // comma
  }
  return fields;
}

std::string_view StripCr(std::string_view s) {
  if (!s.empty() && s.back() == '\r') s.remove_suffix(1);
  return s;
}

bool IsJsonlPath(const std::filesystem::path& path) {
  auto ext = path.extension().string();
  return ext == ".jsonl" || ext == ".json";
}

}  // namespace

std::string_view StageName(Stage stage) {
  switch (stage) {
    case Stage::kRaw: return "raw";
    case Stage::kNormalized: return "normalized";
    case Stage::kZNormed: return "znormed";
  }
  return "?";
}

Stage ParseStage(std::string_view name) {
  if (name == "raw") return Stage::kRaw;
  if (name == "normalized") return Stage::kNormalized;
  if (name == "znormed") return Stage::kZNormed;
  throw Error("unknown vector stage '" + std::string(name) + "'");
}

double StyleVector::ValueOf(std::string_view name) const {
  if (names) {
    for (size_t i = 0; i < names->size(); ++i) {
      if ((*names)[i] == name) return values.at(i);
    }
  }
  throw Error("vector '" + doc_id + "' has no feature '" + std::string(name) + "'");
}

FeatureNames LayoutNames(const Profile& profile) {
  auto layout = profile.shared_layout();
  return FeatureNames(layout, &layout->names);
}

namespace {

StyleVector VectorizeChecked(const ParsedDocument& doc, const Profile& profile,
                             Stage stage, const FeatureNames& names) {
  if (stage == Stage::kZNormed) {
    throw Error("Vectorize produces raw or normalized vectors; use ZNormalize");
  }
  StyleVector v;
  v.doc_id = doc.doc_id;
  v.profile_hash = profile.hash();
  v.stage = stage;
  v.names = names;
  v.values.reserve(names->size());
  for (const auto& g : profile.featurizer().CountAll(doc)) {
    if (stage == Stage::kRaw) {
      v.values.insert(v.values.end(), g.counts.begin(), g.counts.end());
    } else {
      auto n = NormalizeGroup(g, profile.normalization());
      v.values.insert(v.values.end(), n.begin(), n.end());
    }
  }
  return v;
}

}  // namespace

StyleVector Vectorize(const ParsedDocument& doc, const Profile& profile, Stage stage) {
  profile.CheckLabelScheme(std::span<const ParsedDocument>(&doc, 1));
  return VectorizeChecked(doc, profile, stage, LayoutNames(profile));
}

std::vector<StyleVector> VectorizeAll(std::span<const ParsedDocument> docs,
                                      const Profile& profile, Stage stage) {
  profile.CheckLabelScheme(docs);
  FeatureNames names = LayoutNames(profile);
  std::vector<StyleVector> out;
  out.reserve(docs.size());
  for (const auto& d : docs) out.push_back(VectorizeChecked(d, profile, stage, names));
  return out;
}

BackgroundStats FitBackground(std::span<const StyleVector> vectors) {
  if (vectors.size() < 2) {
    throw Error("background needs at least 2 vectors, got " +
                std::to_string(vectors.size()));
  }
  CheckUniform(vectors);
  if (vectors[0].stage != Stage::kNormalized) {
    throw Error("background vectors must be normalized, got " +
                std::string(StageName(vectors[0].stage)));
  }
  const size_t n = vectors.size();
  const size_t dims = vectors[0].size();
  BackgroundStats stats;
  stats.profile_hash = vectors[0].profile_hash;
  stats.n_docs = n;
  stats.mean.resize(dims);
  stats.std.resize(dims);
  for (size_t d = 0; d < dims; ++d) {
    double mean = PairwiseSum(0, n, [&](size_t i) { return vectors[i].values[d]; }) / n;
    double var = PairwiseSum(0, n, [&](size_t i) {
                   double x = vectors[i].values[d] - mean;
                   return x * x;
                 }) / n;
    stats.mean[d] = mean;
    stats.std[d] = std::sqrt(var);
  }
  return stats;
}

StyleVector ZNormalize(const StyleVector& v, const BackgroundStats& stats) {
  if (v.stage != Stage::kNormalized) {
    throw Error("cannot z-normalize '" + v.doc_id + "': stage is " +
                std::string(StageName(v.stage)) + ", expected normalized");
  }
  if (v.profile_hash != stats.profile_hash) {
    throw Error("cannot z-normalize '" + v.doc_id +
                "': background stats come from a different profile");
  }
  if (v.size() != stats.mean.size() || v.size() != stats.std.size()) {
    throw Error("cannot z-normalize '" + v.doc_id + "': dimension mismatch");
  }
  StyleVector out = v;
  out.stage = Stage::kZNormed;
  for (size_t d = 0; d < v.size(); ++d) {
    out.values[d] = stats.std[d] == 0 ? 0.0 : (v.values[d] - stats.mean[d]) / stats.std[d];
  }
  return out;
}

std::vector<StyleVector> ZNormalizeAll(std::span<const StyleVector> vectors,
                                       const BackgroundStats& stats) {
  std::vector<StyleVector> out;
  out.reserve(vectors.size());
  for (const auto& v : vectors) out.push_back(ZNormalize(v, stats));
  return out;
}

void RequireProfile(std::span<const StyleVector> vectors,
                    std::string_view profile_hash, std::string_view what) {
  for (const auto& v : vectors) {
    if (v.profile_hash != profile_hash) {
      throw Error(std::string(what) + ": vector '" + v.doc_id +
                  "' has profile hash " + v.profile_hash + ", expected " +
                  std::string(profile_hash));
    }
  }
}

void WriteVectorsCsv(std::span<const StyleVector> vectors, std::ostream& out) {
  if (vectors.empty()) throw Error("no vectors to write");
  CheckUniform(vectors);
  const StyleVector& first = vectors[0];
  if (!first.names) throw Error("vector '" + first.doc_id + "' has no feature names");
  out << kCsvMagic << "profile_hash=" << first.profile_hash
      << " stage=" << StageName(first.stage) << '\n';
  out << "doc_id";
  for (const auto& n : *first.names) out << ',' << CsvQuote(n);
  out << '\n';
  for (const auto& v : vectors) {
    out << CsvQuote(v.doc_id);
    for (double x : v.values) out << ',' << FormatDouble(x);
    out << '\n';
  }
}

std::vector<StyleVector> ReadVectorsCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || !std::string_view(line).starts_with(kCsvMagic)) {
    throw Error("vector CSV: missing '# stylevec' header line");
  }
  std::string profile_hash;
  std::optional<Stage> stage;
  std::istringstream meta(line.substr(kCsvMagic.size()));
  std::string kv;
  while (meta >> kv) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) continue;
    std::string key = kv.substr(0, eq), value = kv.substr(eq + 1);
    if (key == "profile_hash") profile_hash = value;
    if (key == "stage") stage = ParseStage(value);
  }
  if (profile_hash.empty() || !stage) {
    throw Error("vector CSV: header lacks profile_hash or stage");
  }
  if (!std::getline(in, line)) throw Error("vector CSV: missing column header");
  auto header = CsvSplit(StripCr(line), 2);
  if (header.empty() || header[0] != "doc_id") {
    throw Error("vector CSV: first column must be doc_id");
  }
  auto names = std::make_shared<const std::vector<std::string>>(header.begin() + 1,
                                                                header.end());
  std::vector<StyleVector> out;
  size_t lineno = 2;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view row = StripCr(line);
    if (row.empty()) continue;
    auto fields = CsvSplit(row, lineno);
    if (fields.size() != header.size()) {
      throw Error("vector CSV line " + std::to_string(lineno) + ": expected " +
                  std::to_string(header.size()) + " fields, got " +
                  std::to_string(fields.size()));
    }
    StyleVector v;
    v.doc_id = fields[0];
    v.profile_hash = profile_hash;
    v.stage = *stage;
    v.names = names;
    v.values.reserve(names->size());
    for (size_t i = 1; i < fields.size(); ++i) {
      try {
        v.values.push_back(ParseDouble(fields[i]));
      } catch (const Error& e) {
        throw Error("vector CSV line " + std::to_string(lineno) + ", column '" +
                    header[i] + "': " + e.what());
      }
    }
    out.push_back(std::move(v));
  }
  return out;
}

void WriteVectorsJsonl(std::span<const StyleVector> vectors, std::ostream& out) {
  if (vectors.empty()) throw Error("no vectors to write");
  CheckUniform(vectors);
  const StyleVector& first = vectors[0];
  if (!first.names) throw Error("vector '" + first.doc_id + "' has no feature names");
  json header = {{"profile_hash", first.profile_hash},
                 {"stage", StageName(first.stage)},
                 {"names", *first.names}};
  out << header.dump() << '\n';
  for (const auto& v : vectors) {
    for (double x : v.values) {
      if (!std::isfinite(x)) {
        throw Error("vector '" + v.doc_id + "' has a non-finite value");
      }
    }
    json row = {{"doc_id", v.doc_id}, {"values", v.values}};
    out << row.dump() << '\n';
  }
}

std::vector<StyleVector> ReadVectorsJsonl(std::istream& in) {
  std::string line;
  size_t lineno = 0;
  std::vector<StyleVector> out;
  std::string profile_hash;
  Stage stage = Stage::kNormalized;
  FeatureNames names;
  try {
    while (std::getline(in, line)) {
      ++lineno;
      if (StripCr(line).empty()) continue;
      json j = json::parse(line);
      if (!names) {
        profile_hash = j.at("profile_hash").get<std::string>();
        stage = ParseStage(j.at("stage").get<std::string>());
        names = std::make_shared<const std::vector<std::string>>(
            j.at("names").get<std::vector<std::string>>());
        continue;
      }
      StyleVector v;
      v.doc_id = j.at("doc_id").get<std::string>();
      v.profile_hash = profile_hash;
      v.stage = stage;
      v.names = names;
      v.values = j.at("values").get<std::vector<double>>();
      if (v.values.size() != names->size()) {
        throw Error("expected " + std::to_string(names->size()) + " values, got " +
                    std::to_string(v.values.size()));
      }
      out.push_back(std::move(v));
    }
  } catch (const json::exception& e) {
    throw Error("vector JSONL line " + std::to_string(lineno) + ": " + e.what());
  } catch (const Error& e) {
    throw Error("vector JSONL line " + std::to_string(lineno) + ": " + e.what());
  }
  if (!names) throw Error("vector JSONL: missing header line");
  return out;
}

void WriteVectorsFile(const std::filesystem::path& path,
                      std::span<const StyleVector> vectors) {
  std::ostringstream out;
  if (IsJsonlPath(path)) {
    WriteVectorsJsonl(vectors, out);
  } else {
    WriteVectorsCsv(vectors, out);
  }
  WriteFileAtomic(path, out.str());
}

std::vector<StyleVector> ReadVectorsFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  try {
    return IsJsonlPath(path) ? ReadVectorsJsonl(in) : ReadVectorsCsv(in);
  } catch (const Error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

std::string StatsToJson(const BackgroundStats& stats) {
  json j = {{"profile_hash", stats.profile_hash},
            {"n_docs", stats.n_docs},
            {"mean", stats.mean},
            {"std", stats.std}};
  return j.dump(1) + "\n";
}

BackgroundStats StatsFromJson(std::string_view text) {
  try {
    json j = json::parse(text);
    BackgroundStats s;
    s.profile_hash = j.at("profile_hash").get<std::string>();
    s.n_docs = j.at("n_docs").get<size_t>();
    s.mean = j.at("mean").get<std::vector<double>>();
    s.std = j.at("std").get<std::vector<double>>();
    if (s.mean.size() != s.std.size()) throw Error("mean and std lengths differ");
    for (double x : s.std) {
      if (!(x >= 0)) throw Error("negative or non-finite std");
    }
    return s;
  } catch (const json::exception& e) {
    throw Error(std::string("background stats: ") + e.what());
  }
}

void WriteStatsFile(const std::filesystem::path& path, const BackgroundStats& stats) {
  WriteFileAtomic(path, StatsToJson(stats));
}

BackgroundStats ReadStatsFile(const std::filesystem::path& path) {
  try {
    return StatsFromJson(ReadFile(path));
  } catch (const Error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

}  // namespace stylevec
