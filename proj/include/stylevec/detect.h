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

#ifndef STYLEVEC_DETECT_H_
#define STYLEVEC_DETECT_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stylevec/vectorspace.h"

namespace stylevec {

struct TrainConfig {
  double l2_strength = 0.01;
  size_t max_iterations = 2000;
  // Stop when the largest gradient component falls below this.
  double tolerance = 1e-9;
  uint64_t seed = 0;
  std::string positive_class = "human";
};

struct TrainMetrics {
  double train_accuracy = 0;
  double final_loss = 0;
  size_t iterations = 0;
  bool converged = false;
  std::vector<double> loss_history;
};

struct DetectionModel {
  std::string profile_hash;
  std::vector<std::string> feature_names;
  std::vector<double> weights;
  double bias = 0;
  // Inputs are standardized as (x - mean) / std; std 0 features are unused.
  std::vector<double> mean;
  std::vector<double> std;
  std::string positive_class;
  std::string negative_class;
  TrainConfig config;
  TrainMetrics metrics;
};

// Mean negative log-likelihood of a logistic model plus (l2/2)|w|^2 over
// standardized rows. Parameters are weights followed by the bias; the bias
// is not penalized. Inactive features keep weight and gradient 0.
class LogisticObjective {
 public:
  LogisticObjective(std::vector<double> x, size_t n_features, std::vector<double> y,
                    std::vector<bool> active, double l2_strength);

  size_t n_params() const { return n_features_ + 1; }
  size_t n_rows() const { return y_.size(); }
  double Evaluate(std::span<const double> params, std::vector<double>* grad) const;

 private:
  std::vector<double> x_;  // row-major, n_rows x n_features
  size_t n_features_;
  std::vector<double> y_;  // 0 or 1
  std::vector<bool> active_;
  double l2_;
};

struct MinimizeResult {
  std::vector<double> params;
  double loss = 0;
  size_t iterations = 0;
  bool converged = false;
  std::vector<double> loss_history;  // one entry per accepted step, plus the start
};

// L-BFGS with Armijo backtracking; the loss never increases between steps.
MinimizeResult MinimizeLbfgs(const LogisticObjective& objective,
                             std::vector<double> start, size_t max_iterations,
                             double tolerance);

double Sigmoid(double z);

// Needs exactly two distinct labels, one of them config.positive_class.
// `features` restricts the model to those names (all features when empty).
DetectionModel Train(std::span<const StyleVector> vectors,
                     std::span<const std::string> labels, const TrainConfig& config,
                     std::span<const std::string> features = {});

struct Prediction {
  double probability = 0;  // of the positive class
  std::string label;
};

Prediction Predict(const DetectionModel& model, const StyleVector& v);

struct DetectionReport {
  double accuracy = 0;
  double random_baseline = 0.5;
  size_t n = 0;
  size_t true_pos = 0;
  size_t false_pos = 0;
  size_t true_neg = 0;
  size_t false_neg = 0;
};

DetectionReport Evaluate(const DetectionModel& model,
                         std::span<const StyleVector> vectors,
                         std::span<const std::string> labels);

// By |weight| descending, ties by name.
std::vector<std::pair<std::string, double>> TopFeatures(const DetectionModel& model,
                                                        size_t k);

struct RetrainResult {
  DetectionModel full;
  DetectionModel reduced;
};

RetrainResult RetrainTopK(std::span<const StyleVector> vectors,
                          std::span<const std::string> labels, size_t k,
                          const TrainConfig& config);

std::string ModelToJson(const DetectionModel& model);
DetectionModel ModelFromJson(std::string_view text);
void WriteModelFile(const std::filesystem::path& path, const DetectionModel& model);
DetectionModel ReadModelFile(const std::filesystem::path& path);
std::string DetectionReportToJson(const DetectionReport& report);

}  // namespace stylevec

#endif  // STYLEVEC_DETECT_H_
