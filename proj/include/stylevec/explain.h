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

#ifndef STYLEVEC_EXPLAIN_H_
#define STYLEVEC_EXPLAIN_H_

#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "stylevec/vectorspace.h"

namespace stylevec {

enum class ExplainMode { kSame, kDifferent };

std::string_view ExplainModeName(ExplainMode mode);
ExplainMode ParseExplainMode(std::string_view name);

// |a| + |b| - |a - b|: large when both values deviate from the background in
// the same direction.
inline double SameAuthorScore(double a, double b) {
  return std::abs(a) + std::abs(b) - std::abs(a - b);
}
inline double DifferentAuthorScore(double a, double b) { return std::abs(a - b); }

struct ExplanationRow {
  std::string feature;
  double score = 0;
  double value_a = 0;
  double value_b = 0;

  bool operator==(const ExplanationRow&) const = default;
};

// The n highest-scoring features (all when n exceeds the dimension), score
// descending, ties by name. Both vectors must be z-normalized.
std::vector<ExplanationRow> ExplainPair(const StyleVector& a, const StyleVector& b,
                                        ExplainMode mode, size_t n);

struct ExplanationReport {
  std::string doc_a;
  std::string doc_b;
  double similarity = 0;
  double threshold = 0;
  bool predicted_same = false;
  ExplainMode mode = ExplainMode::kSame;
  std::vector<ExplanationRow> rows;
};

enum class ReportFormat { kTable, kJson, kCsv };
ReportFormat ParseReportFormat(std::string_view name);

std::string RenderReport(const ExplanationReport& report, ReportFormat format);
ExplanationReport ReportFromJson(std::string_view text);

}  // namespace stylevec

#endif  // STYLEVEC_EXPLAIN_H_
