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

#include "stylevec/detect.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>
#include <set>
#include <unordered_map>

#include "json.hpp"
#include "stylevec/error.h"
#include "stylevec/io_util.h"
#include "stylevec/random.h"

namespace stylevec {
namespace {

using nlohmann::json;

double Log1pExp(double z) {
  return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

double Dot(std::span<const double> a, std::span<const double> b) {
  double s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double MaxAbs(std::span<const double> a) {
  double m = 0;
  for (double x : a) m = std::max(m, std::abs(x));
  return m;
}

// Column indices of `names` inside `layout`; Error when one is missing.
std::vector<size_t> Resolve(std::span<const std::string> names,
                            const std::vector<std::string>& layout,
                            const std::string& doc_id) {
  std::unordered_map<std::string_view, size_t> pos;
  pos.reserve(layout.size());
  for (size_t i = 0; i < layout.size(); ++i) pos.emplace(layout[i], i);
  std::vector<size_t> out;
  out.reserve(names.size());
  for (const auto& n : names) {
    auto it = pos.find(n);
    if (it == pos.end()) {
      throw Error("vector '" + doc_id + "' has no feature '" + n + "'");
    }
    out.push_back(it->second);
  }
  return out;
}

// Caches the column mapping across vectors sharing one name list.
class Columns {
 public:
  explicit Columns(std::span<const std::string> names) : names_(names) {}

  const std::vector<size_t>& For(const StyleVector& v) {
    if (!v.names) {
      if (v.size() != names_.size()) {
        throw Error("vector '" + v.doc_id + "': dimension mismatch");
      }
      identity_.resize(names_.size());
      for (size_t i = 0; i < identity_.size(); ++i) identity_[i] = i;
      return identity_;
    }
    if (v.names.get() != cached_for_) {
      cols_ = Resolve(names_, *v.names, v.doc_id);
      cached_for_ = v.names.get();
    }
    return cols_;
  }

 private:
  std::span<const std::string> names_;
  const std::vector<std::string>* cached_for_ = nullptr;
  std::vector<size_t> cols_;
  std::vector<size_t> identity_;
};

double Margin(const DetectionModel& m, const StyleVector& v,
              const std::vector<size_t>& cols) {
  double z = m.bias;
  for (size_t j = 0; j < cols.size(); ++j) {
    if (m.std[j] == 0) continue;
    z += m.weights[j] * (v.values[cols[j]] - m.mean[j]) / m.std[j];
  }
  return z;
}

}  // namespace

double Sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  double e = std::exp(z);
  return e / (1.0 + e);
}

LogisticObjective::LogisticObjective(std::vector<double> x, size_t n_features,
                                     std::vector<double> y, std::vector<bool> active,
                                     double l2_strength)
    : x_(std::move(x)),
      n_features_(n_features),
      y_(std::move(y)),
      active_(std::move(active)),
      l2_(l2_strength) {
  if (x_.size() != n_features_ * y_.size() || active_.size() != n_features_) {
    throw Error("logistic objective: inconsistent shapes");
  }
  if (y_.empty()) throw Error("logistic objective: no rows");
}

double LogisticObjective::Evaluate(std::span<const double> params,
                                   std::vector<double>* grad) const {
  const size_t d = n_features_;
  const size_t n = y_.size();
  if (params.size() != d + 1) throw Error("logistic objective: wrong parameter count");
  if (grad) grad->assign(d + 1, 0.0);
  double loss = 0;
  for (size_t i = 0; i < n; ++i) {
    const double* row = &x_[i * d];
    double z = params[d];
    for (size_t j = 0; j < d; ++j) {
      if (active_[j]) z += params[j] * row[j];
    }
    loss += Log1pExp(z) - y_[i] * z;
    if (grad) {
      double r = Sigmoid(z) - y_[i];
      for (size_t j = 0; j < d; ++j) {
        if (active_[j]) (*grad)[j] += r * row[j];
      }
      (*grad)[d] += r;
    }
  }
  loss /= static_cast<double>(n);
  double penalty = 0;
  for (size_t j = 0; j < d; ++j) {
    if (active_[j]) penalty += params[j] * params[j];
  }
  loss += 0.5 * l2_ * penalty;
  if (grad) {
    for (size_t j = 0; j <= d; ++j) (*grad)[j] /= static_cast<double>(n);
    for (size_t j = 0; j < d; ++j) {
      if (active_[j]) (*grad)[j] += l2_ * params[j];
    }
  }
  return loss;
}

MinimizeResult MinimizeLbfgs(const LogisticObjective& objective,
                             std::vector<double> start, size_t max_iterations,
                             double tolerance) {
  constexpr size_t kMemory = 10;
  constexpr double kArmijo = 1e-4;
  const size_t p = objective.n_params();
  MinimizeResult res;
  std::vector<double> x = std::move(start);
  std::vector<double> g, g_new, x_new(p), dir(p);
  double f = objective.Evaluate(x, &g);
  res.loss_history.push_back(f);

  struct Pair {
    std::vector<double> s, y;
    double rho;
  };
  std::deque<Pair> memory;
  std::vector<double> alpha(kMemory);

  size_t it = 0;
  for (; it < max_iterations; ++it) {
    if (MaxAbs(g) < tolerance) {
      res.converged = true;
      break;
    }
    // Two-loop recursion.
    dir = g;
    for (size_t k = memory.size(); k-- > 0;) {
      alpha[k] = memory[k].rho * Dot(memory[k].s, dir);
      for (size_t j = 0; j < p; ++j) dir[j] -= alpha[k] * memory[k].y[j];
    }
    double gamma = 1.0;
    if (!memory.empty()) {
      const Pair& last = memory.back();
      gamma = Dot(last.s, last.y) / Dot(last.y, last.y);
    } else {
      gamma = 1.0 / std::max(1.0, std::sqrt(Dot(g, g)));
    }
    for (double& v : dir) v *= gamma;
    for (size_t k = 0; k < memory.size(); ++k) {
      double beta = memory[k].rho * Dot(memory[k].y, dir);
      for (size_t j = 0; j < p; ++j) dir[j] += memory[k].s[j] * (alpha[k] - beta);
    }
    for (double& v : dir) v = -v;
    double slope = Dot(g, dir);
    if (!(slope < 0)) {
      memory.clear();
      for (size_t j = 0; j < p; ++j) dir[j] = -g[j];
      slope = Dot(g, dir);
    }

    double step = 1.0;
    double f_new = f;
    bool accepted = false;
    for (int tries = 0; tries < 60; ++tries) {
      for (size_t j = 0; j < p; ++j) x_new[j] = x[j] + step * dir[j];
      f_new = objective.Evaluate(x_new, &g_new);
      if (std::isfinite(f_new) && f_new <= f + kArmijo * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted || f_new > f) {
      if (!memory.empty()) {
        memory.clear();  // retry once along the gradient
        continue;
      }
      break;
    }
    Pair pr{std::vector<double>(p), std::vector<double>(p), 0};
    for (size_t j = 0; j < p; ++j) {
      pr.s[j] = x_new[j] - x[j];
      pr.y[j] = g_new[j] - g[j];
    }
    double sy = Dot(pr.s, pr.y);
    if (sy > 1e-16 * std::sqrt(Dot(pr.s, pr.s) * Dot(pr.y, pr.y)) && sy > 0) {
      pr.rho = 1.0 / sy;
      memory.push_back(std::move(pr));
      if (memory.size() > kMemory) memory.pop_front();
    }
    x.swap(x_new);
    g.swap(g_new);
    f = f_new;
    res.loss_history.push_back(f);
  }
  if (!res.converged && MaxAbs(g) < tolerance) res.converged = true;
  res.params = std::move(x);
  res.loss = f;
  res.iterations = it;
  return res;
}

DetectionModel Train(std::span<const StyleVector> vectors,
                     std::span<const std::string> labels, const TrainConfig& config,
                     std::span<const std::string> features) {
  if (vectors.size() != labels.size()) {
    throw Error("train: " + std::to_string(vectors.size()) + " vectors but " +
                std::to_string(labels.size()) + " labels");
  }
  if (!(config.l2_strength >= 0)) throw Error("train: l2 strength must be >= 0");
  if (!(config.tolerance > 0)) throw Error("train: tolerance must be > 0");
  if (vectors.empty()) throw Error("train: no training vectors");
  std::set<std::string> classes(labels.begin(), labels.end());
  if (classes.size() != 2) {
    throw Error("train: need exactly 2 classes, found " + std::to_string(classes.size()));
  }
  if (!classes.count(config.positive_class)) {
    throw Error("train: positive class '" + config.positive_class +
                "' does not occur in the labels");
  }
  for (size_t i = 1; i < vectors.size(); ++i) {
    if (vectors[i].profile_hash != vectors[0].profile_hash ||
        vectors[i].stage != vectors[0].stage) {
      throw Error("train: vectors '" + vectors[0].doc_id + "' and '" +
                  vectors[i].doc_id + "' differ in profile or stage");
    }
  }

  DetectionModel m;
  m.profile_hash = vectors[0].profile_hash;
  m.positive_class = config.positive_class;
  for (const auto& c : classes) {
    if (c != config.positive_class) m.negative_class = c;
  }
  m.config = config;
  if (features.empty()) {
    if (!vectors[0].names) throw Error("train: vectors carry no feature names");
    m.feature_names = *vectors[0].names;
  } else {
    m.feature_names.assign(features.begin(), features.end());
  }
  const size_t d = m.feature_names.size();
  const size_t n = vectors.size();

  Columns columns(m.feature_names);
  std::vector<double> raw(n * d);
  for (size_t i = 0; i < n; ++i) {
    const auto& cols = columns.For(vectors[i]);
    for (size_t j = 0; j < d; ++j) {
      double x = vectors[i].values[cols[j]];
      if (!std::isfinite(x)) {
        throw Error("train: non-finite value for feature '" + m.feature_names[j] +
                    "' in document '" + vectors[i].doc_id + "'");
      }
      raw[i * d + j] = x;
    }
  }
  m.mean.assign(d, 0.0);
  m.std.assign(d, 0.0);
  for (size_t j = 0; j < d; ++j) {
    double s = 0;
    for (size_t i = 0; i < n; ++i) s += raw[i * d + j];
    double mean = s / n;
    double v = 0;
    for (size_t i = 0; i < n; ++i) v += (raw[i * d + j] - mean) * (raw[i * d + j] - mean);
    m.mean[j] = mean;
    m.std[j] = std::sqrt(v / n);
  }
  std::vector<bool> active(d);
  for (size_t j = 0; j < d; ++j) {
    active[j] = m.std[j] > 0;
    for (size_t i = 0; i < n; ++i) {
      raw[i * d + j] = active[j] ? (raw[i * d + j] - m.mean[j]) / m.std[j] : 0.0;
    }
  }
  std::vector<double> y(n);
  for (size_t i = 0; i < n; ++i) y[i] = labels[i] == m.positive_class ? 1.0 : 0.0;

  LogisticObjective objective(std::move(raw), d, std::move(y), active, config.l2_strength);
  std::mt19937_64 rng(config.seed);
  std::vector<double> start(d + 1, 0.0);
  for (size_t j = 0; j < d; ++j) {
    double u = UniformUnit(rng);
    if (active[j]) start[j] = 0.02 * u - 0.01;
  }
  MinimizeResult r =
      MinimizeLbfgs(objective, std::move(start), config.max_iterations, config.tolerance);
  m.weights.assign(r.params.begin(), r.params.begin() + d);
  m.bias = r.params[d];
  m.metrics.final_loss = r.loss;
  m.metrics.iterations = r.iterations;
  m.metrics.converged = r.converged;
  m.metrics.loss_history = std::move(r.loss_history);
  m.metrics.train_accuracy = Evaluate(m, vectors, labels).accuracy;
  return m;
}

Prediction Predict(const DetectionModel& model, const StyleVector& v) {
  if (v.profile_hash != model.profile_hash) {
    throw Error("predict: vector '" + v.doc_id + "' has profile hash " +
                v.profile_hash + ", model expects " + model.profile_hash);
  }
  Columns columns(model.feature_names);
  double p = Sigmoid(Margin(model, v, columns.For(v)));
  return {p, p >= 0.5 ? model.positive_class : model.negative_class};
}

DetectionReport Evaluate(const DetectionModel& model,
                         std::span<const StyleVector> vectors,
                         std::span<const std::string> labels) {
  if (vectors.size() != labels.size()) {
    throw Error("evaluate: " + std::to_string(vectors.size()) + " vectors but " +
                std::to_string(labels.size()) + " labels");
  }
  if (vectors.empty()) throw Error("evaluate: no vectors");
  DetectionReport r;
  Columns columns(model.feature_names);
  for (size_t i = 0; i < vectors.size(); ++i) {
    const StyleVector& v = vectors[i];
    if (v.profile_hash != model.profile_hash) {
      throw Error("evaluate: vector '" + v.doc_id + "' comes from another profile");
    }
    if (labels[i] != model.positive_class && labels[i] != model.negative_class) {
      throw Error("evaluate: document '" + v.doc_id + "' has unknown label '" +
                  labels[i] + "'");
    }
    bool truth = labels[i] == model.positive_class;
    bool pred = Sigmoid(Margin(model, v, columns.For(v))) >= 0.5;
    if (truth) {
      (pred ? r.true_pos : r.false_neg) += 1;
    } else {
      (pred ? r.false_pos : r.true_neg) += 1;
    }
  }
  r.n = vectors.size();
  r.accuracy = static_cast<double>(r.true_pos + r.true_neg) / static_cast<double>(r.n);
  return r;
}

std::vector<std::pair<std::string, double>> TopFeatures(const DetectionModel& model,
                                                        size_t k) {
  if (k > model.weights.size()) {
    throw Error("top features: k = " + std::to_string(k) + " exceeds " +
                std::to_string(model.weights.size()) + " features");
  }
  std::vector<std::pair<std::string, double>> all;
  all.reserve(model.weights.size());
  for (size_t j = 0; j < model.weights.size(); ++j) {
    all.emplace_back(model.feature_names[j], model.weights[j]);
  }
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    double x = std::abs(a.second), y = std::abs(b.second);
    if (x != y) return x > y;
    return a.first < b.first;
  });
  all.resize(k);
  return all;
}

RetrainResult RetrainTopK(std::span<const StyleVector> vectors,
                          std::span<const std::string> labels, size_t k,
                          const TrainConfig& config) {
  if (k == 0) throw Error("retrain: k must be positive");
  RetrainResult r;
  r.full = Train(vectors, labels, config);
  std::vector<std::string> keep;
  for (auto& [name, w] : TopFeatures(r.full, k)) keep.push_back(name);
  r.reduced = Train(vectors, labels, config, keep);
  return r;
}

std::string ModelToJson(const DetectionModel& m) {
  json j;
  j["profile_hash"] = m.profile_hash;
  j["feature_names"] = m.feature_names;
  j["weights"] = m.weights;
  j["bias"] = m.bias;
  j["standardization"] = {{"mean", m.mean}, {"std", m.std}};
  j["positive_class"] = m.positive_class;
  j["negative_class"] = m.negative_class;
  j["config"] = {{"l2_strength", m.config.l2_strength},
                 {"max_iterations", m.config.max_iterations},
                 {"tolerance", m.config.tolerance},
                 {"seed", m.config.seed}};
  j["metrics"] = {{"train_accuracy", m.metrics.train_accuracy},
                  {"final_loss", m.metrics.final_loss},
                  {"iterations", m.metrics.iterations},
                  {"converged", m.metrics.converged}};
  return j.dump(1) + "\n";
}

DetectionModel ModelFromJson(std::string_view text) {
  try {
    json j = json::parse(text);
    DetectionModel m;
    m.profile_hash = j.at("profile_hash").get<std::string>();
    m.feature_names = j.at("feature_names").get<std::vector<std::string>>();
    m.weights = j.at("weights").get<std::vector<double>>();
    m.bias = j.at("bias").get<double>();
    m.mean = j.at("standardization").at("mean").get<std::vector<double>>();
    m.std = j.at("standardization").at("std").get<std::vector<double>>();
    m.positive_class = j.at("positive_class").get<std::string>();
    m.negative_class = j.at("negative_class").get<std::string>();
    m.config.positive_class = m.positive_class;
    if (j.contains("config")) {
      const json& c = j["config"];
      m.config.l2_strength = c.value("l2_strength", m.config.l2_strength);
      m.config.max_iterations = c.value("max_iterations", m.config.max_iterations);
      m.config.tolerance = c.value("tolerance", m.config.tolerance);
      m.config.seed = c.value("seed", m.config.seed);
    }
    if (j.contains("metrics")) {
      const json& c = j["metrics"];
      m.metrics.train_accuracy = c.value("train_accuracy", 0.0);
      m.metrics.final_loss = c.value("final_loss", 0.0);
      m.metrics.iterations = c.value("iterations", size_t{0});
      m.metrics.converged = c.value("converged", false);
    }
    const size_t d = m.feature_names.size();
    if (m.weights.size() != d || m.mean.size() != d || m.std.size() != d) {
      throw Error("model: weights, standardization and feature names differ in length");
    }
    return m;
  } catch (const json::exception& e) {
    throw Error(std::string("model: ") + e.what());
  }
}

void WriteModelFile(const std::filesystem::path& path, const DetectionModel& model) {
  WriteFileAtomic(path, ModelToJson(model));
}

DetectionModel ReadModelFile(const std::filesystem::path& path) {
  try {
    return ModelFromJson(ReadFile(path));
  } catch (const Error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

std::string DetectionReportToJson(const DetectionReport& r) {
  json j = {{"accuracy", r.accuracy},
            {"random_baseline", r.random_baseline},
            {"n", r.n},
            {"confusion",
             {{"true_pos", r.true_pos},
              {"false_pos", r.false_pos},
              {"true_neg", r.true_neg},
              {"false_neg", r.false_neg}}}};
  return j.dump(2) + "\n";
}

}  // namespace stylevec
