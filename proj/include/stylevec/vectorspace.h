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

#ifndef STYLEVEC_VECTORSPACE_H_
#define STYLEVEC_VECTORSPACE_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stylevec/corpus.h"
#include "stylevec/profile.h"

namespace stylevec {

enum class Stage { kRaw, kNormalized, kZNormed };

std::string_view StageName(Stage stage);
Stage ParseStage(std::string_view name);

using FeatureNames = std::shared_ptr<const std::vector<std::string>>;

struct StyleVector {
  std::string doc_id;
  std::string profile_hash;
  Stage stage = Stage::kNormalized;
  FeatureNames names;
  std::vector<double> values;

  size_t size() const { return values.size(); }
  // Throws Error for an unknown name.
  double ValueOf(std::string_view name) const;
};

FeatureNames LayoutNames(const Profile& profile);

// kRaw keeps counts; kNormalized divides each group per the profile's mode.
// Throws Error on a label-scheme mismatch.
StyleVector Vectorize(const ParsedDocument& doc, const Profile& profile,
                      Stage stage = Stage::kNormalized);
std::vector<StyleVector> VectorizeAll(std::span<const ParsedDocument> docs,
                                      const Profile& profile,
                                      Stage stage = Stage::kNormalized);

struct BackgroundStats {
  std::string profile_hash;
  size_t n_docs = 0;
  std::vector<double> mean;
  std::vector<double> std;  // population
};

// Needs at least two normalized vectors of one profile.
BackgroundStats FitBackground(std::span<const StyleVector> vectors);

// (v - mean) / std, and 0 where std is 0.
StyleVector ZNormalize(const StyleVector& v, const BackgroundStats& stats);
std::vector<StyleVector> ZNormalizeAll(std::span<const StyleVector> vectors,
                                       const BackgroundStats& stats);

// Throws Error naming `what` if any vector was built with another profile.
void RequireProfile(std::span<const StyleVector> vectors,
                    std::string_view profile_hash, std::string_view what);

// CSV: "# stylevec profile_hash=<hex> stage=<stage>", then a header
// "doc_id,<names...>" and one row per document. Fields are RFC 4180 quoted
// when needed. Values use the shortest round-trip decimal form.
void WriteVectorsCsv(std::span<const StyleVector> vectors, std::ostream& out);
std::vector<StyleVector> ReadVectorsCsv(std::istream& in);

// JSONL: a header object {"profile_hash","stage","names"} then
// {"doc_id","values"} per line.
void WriteVectorsJsonl(std::span<const StyleVector> vectors, std::ostream& out);
std::vector<StyleVector> ReadVectorsJsonl(std::istream& in);

// Format chosen by extension: ".jsonl" or ".json" for JSONL, else CSV.
void WriteVectorsFile(const std::filesystem::path& path,
                      std::span<const StyleVector> vectors);
std::vector<StyleVector> ReadVectorsFile(const std::filesystem::path& path);

std::string StatsToJson(const BackgroundStats& stats);
BackgroundStats StatsFromJson(std::string_view text);
void WriteStatsFile(const std::filesystem::path& path, const BackgroundStats& stats);
BackgroundStats ReadStatsFile(const std::filesystem::path& path);

}  // namespace stylevec

#endif  // STYLEVEC_VECTORSPACE_H_
