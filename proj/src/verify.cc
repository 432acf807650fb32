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

#include "stylevec/verify.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>
#include <set>

#include "json.hpp"
#include "stylevec/error.h"
#include "stylevec/io_util.h"
#include "stylevec/random.h"

namespace stylevec {
namespace {

using nlohmann::json;

void CountClasses(std::span<const ScoredPair> scored, size_t* pos, size_t* neg) {
  *pos = 0;
  *neg = 0;
  for (const auto& s : scored) (s.positive ? *pos : *neg) += 1;
}

void RequireBothClasses(std::span<const ScoredPair> scored, const char* what) {
  size_t pos, neg;
  CountClasses(scored, &pos, &neg);
  if (pos == 0 || neg == 0) {
    throw Error(std::string(what) + " needs both same-author and different-author "
                "pairs (got " + std::to_string(pos) + " and " + std::to_string(neg) + ")");
  }
}

std::pair<std::string, std::string> Key(const DocumentPair& p) {
  return p.doc_a < p.doc_b ? std::make_pair(p.doc_a, p.doc_b)
                           : std::make_pair(p.doc_b, p.doc_a);
}

}  // namespace

double Cosine(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error("cosine: dimension mismatch (" + std::to_string(a.size()) + " vs " +
                std::to_string(b.size()) + ")");
  }
  double dot = 0, na = 0, nb = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0 || nb == 0) return 0;
  double c = dot / (std::sqrt(na) * std::sqrt(nb));
  return std::clamp(c, -1.0, 1.0);
}

double Cosine(const StyleVector& a, const StyleVector& b) {
  if (a.profile_hash != b.profile_hash) {
    throw Error("cosine: '" + a.doc_id + "' and '" + b.doc_id +
                "' come from different profiles");
  }
  if (a.stage != b.stage) {
    throw Error("cosine: '" + a.doc_id + "' and '" + b.doc_id +
                "' are at different stages");
  }
  return Cosine(std::span<const double>(a.values), std::span<const double>(b.values));
}

double BalancedAccuracy(std::span<const ScoredPair> scored, double threshold) {
  size_t tp = 0, tn = 0, pos, neg;
  CountClasses(scored, &pos, &neg);
  for (const auto& s : scored) {
    bool pred = Decide(s.score, threshold);
    if (s.positive && pred) ++tp;
    if (!s.positive && !pred) ++tn;
  }
  double tpr = pos ? static_cast<double>(tp) / pos : 0;
  double tnr = neg ? static_cast<double>(tn) / neg : 0;
  if (!pos) return tnr;
  if (!neg) return tpr;
  return (tpr + tnr) / 2;
}

ThresholdChoice TuneThreshold(std::span<const ScoredPair> scored) {
  RequireBothClasses(scored, "threshold tuning");
  for (const auto& s : scored) {
    if (std::isnan(s.score)) throw Error("threshold tuning: NaN similarity");
  }
  std::vector<ScoredPair> sorted(scored.begin(), scored.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const ScoredPair& a, const ScoredPair& b) { return a.score < b.score; });
  size_t pos, neg;
  CountClasses(sorted, &pos, &neg);

  // Candidate -inf predicts every pair positive: tp = pos, tn = 0.
  // Balanced accuracy is compared exactly as tp * neg + tn * pos.
  const double inf = std::numeric_limits<double>::infinity();
  double best_t = -inf;
  uint64_t best_score = static_cast<uint64_t>(pos) * neg;
  size_t tp = pos, tn = 0;
  size_t i = 0;
  while (i < sorted.size()) {
    double v = sorted[i].score;
    while (i < sorted.size() && sorted[i].score == v) {
      if (sorted[i].positive) {
        --tp;
      } else {
        ++tn;
      }
      ++i;
    }
    double t = i < sorted.size() ? (v + sorted[i].score) / 2 : inf;
    uint64_t score = static_cast<uint64_t>(tp) * neg + static_cast<uint64_t>(tn) * pos;
    if (score > best_score) {
      best_score = score;
      best_t = t;
    }
  }
  return {best_t, static_cast<double>(best_score) / (2.0 * pos * neg)};
}

double Auc(std::span<const ScoredPair> scored) {
  RequireBothClasses(scored, "AUC");
  std::vector<ScoredPair> sorted(scored.begin(), scored.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const ScoredPair& a, const ScoredPair& b) { return a.score < b.score; });
  // Mann-Whitney U from midranks; ranks are doubled to stay integral.
  uint64_t pos = 0, neg = 0, rank2_sum = 0;
  size_t i = 0;
  while (i < sorted.size()) {
    size_t j = i;
    while (j < sorted.size() && sorted[j].score == sorted[i].score) ++j;
    uint64_t mid2 = static_cast<uint64_t>(i + 1 + j);  // 2 * average 1-based rank
    for (size_t k = i; k < j; ++k) {
      if (sorted[k].positive) {
        ++pos;
        rank2_sum += mid2;
      } else {
        ++neg;
      }
    }
    i = j;
  }
  double u2 = static_cast<double>(rank2_sum) - static_cast<double>(pos * (pos + 1));
  return u2 / (2.0 * static_cast<double>(pos) * static_cast<double>(neg));
}

VectorIndex::VectorIndex(std::span<const StyleVector> vectors) {
  for (const auto& v : vectors) {
    if (!by_id_.emplace(v.doc_id, &v).second) {
      throw Error("duplicate vector for document '" + v.doc_id + "'");
    }
  }
}

const StyleVector& VectorIndex::at(const std::string& doc_id) const {
  auto it = by_id_.find(doc_id);
  if (it == by_id_.end()) throw Error("no vector for document '" + doc_id + "'");
  return *it->second;
}

std::vector<ScoredPair> ScorePairs(std::span<const DocumentPair> pairs,
                                   const VectorIndex& vectors) {
  std::vector<ScoredPair> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) {
    out.push_back({Cosine(vectors.at(p.doc_a), vectors.at(p.doc_b)), p.same_author});
  }
  return out;
}

VerificationRun RunVerification(std::span<const DocumentPair> eval_pairs,
                                std::span<const DocumentPair> tune_pairs,
                                std::span<const StyleVector> vectors,
                                const VerifyConfig& config) {
  if (eval_pairs.empty()) throw Error("no evaluation pairs");
  VectorIndex index(vectors);
  VerificationRun run;
  EvalReport& r = run.report;
  if (config.threshold) {
    r.threshold = *config.threshold;
  } else {
    if (tune_pairs.empty()) {
      throw Error("no threshold given and no tuning pairs to tune one on");
    }
    std::set<std::pair<std::string, std::string>> eval_keys;
    for (const auto& p : eval_pairs) eval_keys.insert(Key(p));
    for (const auto& p : tune_pairs) {
      if (eval_keys.count(Key(p))) {
        throw Error("tuning and evaluation pairs overlap: (" + p.doc_a + ", " +
                    p.doc_b + ")");
      }
    }
    r.threshold = TuneThreshold(ScorePairs(tune_pairs, index)).threshold;
    r.threshold_tuned = true;
    r.n_tune_pairs = tune_pairs.size();
  }

  std::vector<ScoredPair> scored = ScorePairs(eval_pairs, index);
  run.results.reserve(eval_pairs.size());
  for (size_t i = 0; i < eval_pairs.size(); ++i) {
    VerificationResult res{eval_pairs[i], scored[i].score,
                           Decide(scored[i].score, r.threshold), r.threshold};
    Confusion& c = r.confusion;
    if (res.pair.same_author) {
      (res.predicted_same ? c.true_pos : c.false_neg) += 1;
    } else {
      (res.predicted_same ? c.false_pos : c.true_neg) += 1;
    }
    run.results.push_back(std::move(res));
  }
  r.n_pairs = eval_pairs.size();
  r.accuracy = static_cast<double>(r.confusion.true_pos + r.confusion.true_neg) /
               static_cast<double>(r.n_pairs);
  r.balanced_accuracy = BalancedAccuracy(scored, r.threshold);
  size_t pos, neg;
  CountClasses(scored, &pos, &neg);
  if (pos && neg) r.auc = Auc(scored);
  return run;
}

PairSplit SplitPairs(std::span<const DocumentPair> pairs, double tune_fraction,
                     uint64_t seed) {
  if (!(tune_fraction > 0 && tune_fraction < 1)) {
    throw Error("tune fraction must be in (0, 1)");
  }
  std::vector<size_t> same, diff;
  for (size_t i = 0; i < pairs.size(); ++i) {
    (pairs[i].same_author ? same : diff).push_back(i);
  }
  std::mt19937_64 rng(seed);
  std::vector<bool> to_tune(pairs.size(), false);
  for (auto* cls : {&same, &diff}) {
    Shuffle(std::span<size_t>(*cls), rng);
    size_t k = static_cast<size_t>(std::llround(tune_fraction * cls->size()));
    if (cls->size() >= 2) k = std::clamp<size_t>(k, 1, cls->size() - 1);
    for (size_t i = 0; i < k && i < cls->size(); ++i) to_tune[(*cls)[i]] = true;
  }
  PairSplit split;
  for (size_t i = 0; i < pairs.size(); ++i) {
    (to_tune[i] ? split.tune : split.eval).push_back(pairs[i]);
  }
  return split;
}

std::string ReportToJson(const EvalReport& r) {
  json j;
  j["auc"] = r.auc ? json(*r.auc) : json(nullptr);
  j["accuracy"] = r.accuracy;
  j["balanced_accuracy"] = r.balanced_accuracy;
  j["threshold"] = std::isfinite(r.threshold) ? json(r.threshold)
                                               : json(FormatDouble(r.threshold));
  j["threshold_tuned"] = r.threshold_tuned;
  j["n_pairs"] = r.n_pairs;
  j["n_tune_pairs"] = r.n_tune_pairs;
  j["confusion"] = {{"true_pos", r.confusion.true_pos},
                    {"false_pos", r.confusion.false_pos},
                    {"true_neg", r.confusion.true_neg},
                    {"false_neg", r.confusion.false_neg}};
  return j.dump(2) + "\n";
}

void WriteResultsCsv(std::span<const VerificationResult> results, std::ostream& out) {
  auto quote = [](const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + "\"";
  };
  out << "doc_a,doc_b,similarity,truth,prediction\n";
  for (const auto& r : results) {
    out << quote(r.pair.doc_a) << ',' << quote(r.pair.doc_b) << ','
        << FormatDouble(r.similarity) << ',' << (r.pair.same_author ? "same" : "different")
        << ',' << (r.predicted_same ? "same" : "different") << '\n';
  }
}

}  // namespace stylevec
