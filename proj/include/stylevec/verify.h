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

#ifndef STYLEVEC_VERIFY_H_
#define STYLEVEC_VERIFY_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "stylevec/corpus.h"
#include "stylevec/vectorspace.h"

namespace stylevec {

// 0 when either norm is 0.
double Cosine(std::span<const double> a, std::span<const double> b);
// Also requires matching profile and stage.
double Cosine(const StyleVector& a, const StyleVector& b);

// Inclusive: similarity == threshold is "same author".
inline bool Decide(double similarity, double threshold) {
  return similarity >= threshold;
}

struct ScoredPair {
  double score = 0;
  bool positive = false;
};

struct ThresholdChoice {
  double threshold = 0;
  double balanced_accuracy = 0;
};

double BalancedAccuracy(std::span<const ScoredPair> scored, double threshold);

// Candidates are -inf, the midpoints between adjacent distinct scores, and
// +inf; the best balanced accuracy wins, ties go to the smallest candidate.
// When every score is equal the result is -inf with balanced accuracy 0.5.
// Throws Error unless both classes are present.
ThresholdChoice TuneThreshold(std::span<const ScoredPair> scored);

// Probability that a positive outscores a negative, ties counting 1/2.
// Throws Error unless both classes are present.
double Auc(std::span<const ScoredPair> scored);

struct VerificationResult {
  DocumentPair pair;
  double similarity = 0;
  bool predicted_same = false;
  double threshold_used = 0;
};

struct Confusion {
  size_t true_pos = 0;
  size_t false_pos = 0;
  size_t true_neg = 0;
  size_t false_neg = 0;

  size_t total() const { return true_pos + false_pos + true_neg + false_neg; }
};

struct EvalReport {
  std::optional<double> auc;  // absent when the pairs have a single class
  double accuracy = 0;
  double balanced_accuracy = 0;
  double threshold = 0;
  bool threshold_tuned = false;
  size_t n_pairs = 0;
  size_t n_tune_pairs = 0;
  Confusion confusion;
};

struct VerifyConfig {
  // Fixed threshold; when absent it is tuned on the tuning pairs.
  std::optional<double> threshold;
};

struct VerificationRun {
  EvalReport report;
  std::vector<VerificationResult> results;
};

class VectorIndex {
 public:
  explicit VectorIndex(std::span<const StyleVector> vectors);
  // Throws Error naming the document when absent.
  const StyleVector& at(const std::string& doc_id) const;

 private:
  std::unordered_map<std::string, const StyleVector*> by_id_;
};

std::vector<ScoredPair> ScorePairs(std::span<const DocumentPair> pairs,
                                   const VectorIndex& vectors);

// Tuning pairs are never evaluation pairs: an unordered document pair in
// both sets is an Error.
VerificationRun RunVerification(std::span<const DocumentPair> eval_pairs,
                                std::span<const DocumentPair> tune_pairs,
                                std::span<const StyleVector> vectors,
                                const VerifyConfig& config);

struct PairSplit {
  std::vector<DocumentPair> tune;
  std::vector<DocumentPair> eval;
};

// Stratified by same_author: each class contributes round(fraction * n_class)
// pairs (at least one when the class has two or more) to `tune`.
PairSplit SplitPairs(std::span<const DocumentPair> pairs, double tune_fraction,
                     uint64_t seed);

std::string ReportToJson(const EvalReport& report);
// doc_a,doc_b,similarity,truth,prediction
void WriteResultsCsv(std::span<const VerificationResult> results, std::ostream& out);

}  // namespace stylevec

#endif  // STYLEVEC_VERIFY_H_
