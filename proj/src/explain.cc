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

#include "stylevec/explain.h"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "stylevec/error.h"
#include "stylevec/io_util.h"

namespace stylevec {
namespace {

using nlohmann::json;

std::string Fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

// Display width in code points; good enough for aligned feature names.
size_t Width(std::string_view s) {
  size_t w = 0;
  for (unsigned char c : s) w += (c & 0xC0) != 0x80;
  return w;
}

json JsonNumber(double v) {
  return std::isfinite(v) ? json(v) : json(FormatDouble(v));
}

double NumberFromJson(const json& j) {
  return j.is_string() ? ParseDouble(j.get<std::string>()) : j.get<double>();
}

}  // namespace

std::string_view ExplainModeName(ExplainMode mode) {
  return mode == ExplainMode::kSame ? "same" : "different";
}

ExplainMode ParseExplainMode(std::string_view name) {
  if (name == "same") return ExplainMode::kSame;
  if (name == "different") return ExplainMode::kDifferent;
  throw Error("unknown explanation mode '" + std::string(name) +
              "' (expected same or different)");
}

std::vector<ExplanationRow> ExplainPair(const StyleVector& a, const StyleVector& b,
                                        ExplainMode mode, size_t n) {
  if (n == 0) throw Error("explain: n must be at least 1");
  if (a.stage != Stage::kZNormed || b.stage != Stage::kZNormed) {
    throw Error("explain: '" + a.doc_id + "' and '" + b.doc_id +
                "' must both be z-normalized");
  }
  if (a.profile_hash != b.profile_hash) {
    throw Error("explain: '" + a.doc_id + "' and '" + b.doc_id +
                "' come from different profiles");
  }
  if (a.size() != b.size() || !a.names || a.names->size() != a.size()) {
    throw Error("explain: dimension mismatch");
  }
  std::vector<ExplanationRow> rows;
  rows.reserve(a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    double x = a.values[i], y = b.values[i];
    double s = mode == ExplainMode::kSame ? SameAuthorScore(x, y)
                                          : DifferentAuthorScore(x, y);
    rows.push_back({(*a.names)[i], s, x, y});
  }
  auto before = [](const ExplanationRow& p, const ExplanationRow& q) {
    if (p.score != q.score) return p.score > q.score;
    return p.feature < q.feature;
  };
  n = std::min(n, rows.size());
  std::partial_sort(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(n),
                    rows.end(), before);
  rows.resize(n);
  return rows;
}

ReportFormat ParseReportFormat(std::string_view name) {
  if (name == "table") return ReportFormat::kTable;
  if (name == "json") return ReportFormat::kJson;
  if (name == "csv") return ReportFormat::kCsv;
  throw Error("unknown format '" + std::string(name) + "' (expected table, json or csv)");
}

std::string RenderReport(const ExplanationReport& r, ReportFormat format) {
  std::ostringstream out;
  const char* verdict = r.predicted_same ? "same author" : "different authors";
  switch (format) {
    case ReportFormat::kJson: {
      json rows = json::array();
      for (const auto& row : r.rows) {
        rows.push_back({{"feature", row.feature},
                        {"score", JsonNumber(row.score)},
                        {"value_a", JsonNumber(row.value_a)},
                        {"value_b", JsonNumber(row.value_b)}});
      }
      json j = {{"doc_a", r.doc_a},
                {"doc_b", r.doc_b},
                {"similarity", JsonNumber(r.similarity)},
                {"threshold", JsonNumber(r.threshold)},
                {"predicted_same", r.predicted_same},
                {"mode", ExplainModeName(r.mode)},
                {"rows", rows}};
      out << j.dump(2) << '\n';
      break;
    }
    case ReportFormat::kCsv:
      out << "feature,score," << CsvField(r.doc_a) << ',' << CsvField(r.doc_b) << '\n';
      for (const auto& row : r.rows) {
        out << CsvField(row.feature) << ',' << FormatDouble(row.score) << ','
            << FormatDouble(row.value_a) << ',' << FormatDouble(row.value_b) << '\n';
      }
      break;
    case ReportFormat::kTable: {
      size_t w = Width("feature");
      for (const auto& row : r.rows) w = std::max(w, Width(row.feature));
      auto pad = [&](const std::string& s, size_t width) {
        return s + std::string(width > Width(s) ? width - Width(s) : 0, ' ');
      };
      out << "similarity " << Fixed(r.similarity, 4) << ", threshold "
          << Fixed(r.threshold, 4) << ": " << verdict << " ("
          << ExplainModeName(r.mode) << "-author scores)\n\n";
      out << pad("feature", w) << "  " << pad("score", 8) << "  " << pad(r.doc_a, 8)
          << "  " << r.doc_b << '\n';
      for (const auto& row : r.rows) {
        out << pad(row.feature, w) << "  " << pad(Fixed(row.score, 2), 8) << "  "
            << pad(Fixed(row.value_a, 2), std::max<size_t>(8, Width(r.doc_a))) << "  "
            << Fixed(row.value_b, 2) << '\n';
      }
      break;
    }
  }
  return out.str();
}

ExplanationReport ReportFromJson(std::string_view text) {
  try {
    json j = json::parse(text);
    ExplanationReport r;
    r.doc_a = j.at("doc_a").get<std::string>();
    r.doc_b = j.at("doc_b").get<std::string>();
    r.similarity = NumberFromJson(j.at("similarity"));
    r.threshold = NumberFromJson(j.at("threshold"));
    r.predicted_same = j.at("predicted_same").get<bool>();
    r.mode = ParseExplainMode(j.at("mode").get<std::string>());
    for (const auto& row : j.at("rows")) {
      r.rows.push_back({row.at("feature").get<std::string>(),
                        NumberFromJson(row.at("score")),
                        NumberFromJson(row.at("value_a")),
                        NumberFromJson(row.at("value_b"))});
    }
    return r;
  } catch (const json::exception& e) {
    throw Error(std::string("explanation report: ") + e.what());
  }
}

}  // namespace stylevec
