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

#include "stylevec/cli/cli.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "stylevec/cli/manifest.h"
#include "stylevec/corpus.h"
#include "stylevec/detect.h"
#include "stylevec/error.h"
#include "stylevec/explain.h"
#include "stylevec/io_util.h"
#include "stylevec/profile.h"
#include "stylevec/srm.h"
#include "stylevec/vectorspace.h"
#include "stylevec/verify.h"

#ifndef STYLEVEC_VERSION
#define STYLEVEC_VERSION "dev"
#endif

namespace stylevec::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class UsageError : public Error {
 public:
  using Error::Error;
};

struct Io {
  std::ostream& out;
  std::ostream& err;
  RunManifest manifest;
};

// ---------------------------------------------------------------------------
// Shared option groups

struct ProfileOptions {
  std::string profile;
  std::string label_scheme;
  bool aux_length = false;
  std::string normalization;

  void Add(CLI::App* app) {
    app->add_option("--profile", profile,
                    "Profile JSON file or name in the profile directory");
    app->add_option("--label-scheme", label_scheme, "clearnlp or ud")
        ->check(CLI::IsMember({"clearnlp", "ud"}));
    app->add_flag("--aux-length", aux_length, "Append the aux_length group");
    app->add_option("--normalization", normalization, "group_total or rate")
        ->check(CLI::IsMember({"group_total", "rate"}));
  }
};

struct CorpusOptions {
  std::vector<std::string> conllu;
  std::string docs;
  bool skip_bad = false;

  void Add(CLI::App* app) {
    app->add_option("--conllu", conllu, "CoNLL-U input (repeatable)");
    app->add_option("--docs", docs, "JSONL document metadata");
    app->add_flag("--skip-bad", skip_bad, "Drop malformed documents instead of failing");
  }
};

fs::path ResolveProfilePath(const std::string& name_or_path) {
  fs::path p(name_or_path);
  if (fs::exists(p)) return p;
  if (name_or_path.find('/') == std::string::npos) {
    fs::path named = DefaultProfileDir() / (name_or_path + (p.has_extension() ? "" : ".json"));
    if (fs::exists(named)) return named;
  }
  throw Error("profile not found: " + name_or_path);
}

Profile LoadProfile(const ProfileOptions& o, std::span<const ParsedDocument> docs,
                    Io& io) {
  ProfileOverrides ov;
  if (o.aux_length) ov.aux_length = true;
  if (!o.normalization.empty()) ov.normalization = ParseNormalizationMode(o.normalization);
  fs::path path;
  if (!o.profile.empty()) {
    path = ResolveProfilePath(o.profile);
  } else {
    LabelScheme scheme = LabelScheme::kClearNlp;
    if (!o.label_scheme.empty()) {
      scheme = ParseLabelScheme(o.label_scheme);
    } else if (auto found = DetectLabelScheme(docs)) {
      scheme = *found;
    }
    path = DefaultProfilePath(scheme);
  }
  Profile p = Profile::Load(path, ov);
  if (!o.label_scheme.empty() && ParseLabelScheme(o.label_scheme) != p.label_scheme()) {
    throw UsageError("--label-scheme " + o.label_scheme + " contradicts profile " +
                     path.string());
  }
  io.manifest.AddInput(path);
  io.manifest.profile_hash = p.hash();
  return p;
}

std::vector<ParsedDocument> LoadCorpus(const CorpusOptions& o, Io& io) {
  if (o.conllu.empty()) throw UsageError("at least one --conllu input is required");
  std::vector<ParsedDocument> docs;
  std::map<std::string, std::string> origin;
  std::vector<std::string> problems;
  for (const auto& path : o.conllu) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    ConlluReadResult r = ReadConllu(in);
    io.manifest.AddInput(path);
    for (const auto& e : r.errors) {
      std::string where = e.line ? path + ":" + std::to_string(e.line) : path;
      problems.push_back(where + ": document '" + e.doc_id + "': " + e.message);
    }
    for (auto& d : r.documents) {
      auto [it, fresh] = origin.emplace(d.doc_id, path);
      if (!fresh) {
        throw Error("duplicate document id '" + d.doc_id + "' in " + it->second +
                    " and " + path);
      }
      docs.push_back(std::move(d));
    }
  }
  if (!problems.empty()) {
    if (!o.skip_bad) {
      std::string msg = std::to_string(problems.size()) + " malformed document(s):";
      for (size_t i = 0; i < problems.size() && i < 20; ++i) msg += "\n  " + problems[i];
      msg += "\n(use --skip-bad to drop them)";
      throw Error(msg);
    }
    for (const auto& p : problems) io.err << "warning: skipped " << p << '\n';
  }
  if (!o.docs.empty()) {
    std::ifstream in(o.docs, std::ios::binary);
    if (!in) throw Error("cannot open " + o.docs);
    std::vector<DocumentRecord> records;
    try {
      records = ReadDocumentsJsonl(in);
    } catch (const Error& e) {
      throw Error(o.docs + ": " + e.what());
    }
    io.manifest.AddInput(o.docs);
    JoinMetadata(docs, records);
  }
  return docs;
}

std::vector<DocumentRecord> LoadRecords(const std::string& path, Io& io) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  try {
    auto records = ReadDocumentsJsonl(in);
    io.manifest.AddInput(path);
    return records;
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
}

std::vector<StyleVector> LoadVectors(const std::string& path, Io& io) {
  auto v = ReadVectorsFile(path);
  io.manifest.AddInput(path);
  if (v.empty()) throw Error(path + ": no vectors");
  if (io.manifest.profile_hash.empty()) io.manifest.profile_hash = v[0].profile_hash;
  return v;
}

std::vector<DocumentPair> LoadPairs(const std::string& path, Io& io) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  try {
    auto pairs = ReadPairsJsonl(in);
    io.manifest.AddInput(path);
    return pairs;
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
}

std::vector<std::string> LabelsFor(std::span<const StyleVector> vectors,
                                   const std::vector<DocumentRecord>& records) {
  std::map<std::string, std::string> by_id;
  for (const auto& r : records) by_id[r.doc_id] = r.label;
  std::vector<std::string> labels;
  labels.reserve(vectors.size());
  for (const auto& v : vectors) {
    auto it = by_id.find(v.doc_id);
    if (it == by_id.end() || it->second.empty()) {
      throw Error("document '" + v.doc_id + "' has no label");
    }
    labels.push_back(it->second);
  }
  return labels;
}

BackgroundStats LoadStats(const std::string& path, Io& io) {
  BackgroundStats s = ReadStatsFile(path);
  io.manifest.AddInput(path);
  return s;
}

// Writes `content` to `path` (atomically) or to stdout when path is empty.
void Emit(const std::string& path, const std::string& content, Io& io) {
  if (path.empty()) {
    io.out << content;
    return;
  }
  WriteFileAtomic(path, content);
  io.manifest.AddOutput(path);
}

void RequireZNormed(std::vector<StyleVector>& vectors, const std::string& stats_path,
                    Io& io, const char* what) {
  if (vectors[0].stage == Stage::kZNormed) return;
  if (stats_path.empty()) {
    throw UsageError(std::string(what) + " needs z-normalized vectors; pass --stats");
  }
  vectors = ZNormalizeAll(vectors, LoadStats(stats_path, io));
}

// ---------------------------------------------------------------------------
// Commands

struct VectorizeOptions {
  CorpusOptions corpus;
  ProfileOptions profile;
  bool znorm = false;
  bool raw = false;
  std::string stats;
  std::string out;
};

void Vectorize(const VectorizeOptions& o, Io& io) {
  if (o.znorm && o.stats.empty()) throw UsageError("--znorm requires --stats");
  if (!o.znorm && !o.stats.empty()) throw UsageError("--stats is only used with --znorm");
  if (o.znorm && o.raw) throw UsageError("--raw and --znorm are exclusive");
  auto docs = LoadCorpus(o.corpus, io);
  if (docs.empty()) throw Error("no documents to vectorize");
  Profile profile = LoadProfile(o.profile, docs, io);
  auto vectors = VectorizeAll(docs, profile, o.raw ? Stage::kRaw : Stage::kNormalized);
  if (o.znorm) {
    BackgroundStats stats = LoadStats(o.stats, io);
    if (stats.profile_hash != profile.hash()) {
      throw Error(o.stats + ": background stats were fitted with a different profile");
    }
    vectors = ZNormalizeAll(vectors, stats);
  }
  if (o.out.empty()) {
    WriteVectorsCsv(vectors, io.out);
  } else {
    WriteVectorsFile(o.out, vectors);
    io.manifest.AddOutput(o.out);
  }
}

struct FitOptions {
  std::string vectors;
  std::string out;
};

void FitBackgroundCmd(const FitOptions& o, Io& io) {
  auto vectors = LoadVectors(o.vectors, io);
  Emit(o.out, StatsToJson(FitBackground(vectors)), io);
}

struct ZnormOptions {
  std::string vectors;
  std::string stats;
  std::string out;
};

void ZnormCmd(const ZnormOptions& o, Io& io) {
  auto vectors = LoadVectors(o.vectors, io);
  auto z = ZNormalizeAll(vectors, LoadStats(o.stats, io));
  if (o.out.empty()) {
    WriteVectorsCsv(z, io.out);
  } else {
    WriteVectorsFile(o.out, z);
    io.manifest.AddOutput(o.out);
  }
}

struct PairsOptions {
  CorpusOptions corpus;
  size_t n_same = 0;
  size_t n_diff = 0;
  uint64_t seed = 0;
  std::string out;
};

void PairsCmd(const PairsOptions& o, Io& io) {
  std::vector<AuthoredDoc> authored;
  if (!o.corpus.conllu.empty()) {
    for (const auto& d : LoadCorpus(o.corpus, io)) authored.push_back({d.doc_id, d.author_id});
  } else if (!o.corpus.docs.empty()) {
    for (const auto& r : LoadRecords(o.corpus.docs, io)) {
      authored.push_back({r.doc_id, r.author_id});
    }
  } else {
    throw UsageError("pairs needs --docs or --conllu");
  }
  io.manifest.seed = o.seed;
  auto pairs = GeneratePairs(authored, o.n_same, o.n_diff, o.seed);
  std::ostringstream s;
  WritePairsJsonl(pairs, s);
  Emit(o.out, s.str(), io);
}

struct VerifyOptions {
  std::string pairs;
  std::string vectors;
  std::string stats;
  std::string profile;
  double threshold = 0;
  CLI::Option* threshold_opt = nullptr;
  std::string tune_pairs;
  double tune_split = 0;
  CLI::Option* tune_split_opt = nullptr;
  uint64_t seed = 0;
  std::string out;
  std::string results;
};

void CheckProfileArg(const std::string& profile, std::span<const StyleVector> vectors,
                     Io& io) {
  if (profile.empty()) return;
  fs::path path = ResolveProfilePath(profile);
  Profile p = Profile::Load(path);
  io.manifest.AddInput(path);
  RequireProfile(vectors, p.hash(), "vectors");
}

void VerifyCmd(const VerifyOptions& o, Io& io) {
  int sources = (o.threshold_opt->count() > 0) + !o.tune_pairs.empty() +
                (o.tune_split_opt->count() > 0);
  if (sources != 1) {
    throw UsageError("give exactly one of --threshold, --tune-pairs, --tune-split");
  }
  auto vectors = LoadVectors(o.vectors, io);
  CheckProfileArg(o.profile, vectors, io);
  if (!o.stats.empty() && vectors[0].stage == Stage::kNormalized) {
    vectors = ZNormalizeAll(vectors, LoadStats(o.stats, io));
  }
  if (vectors[0].stage != Stage::kZNormed) {
    io.err << "note: scoring " << StageName(vectors[0].stage)
           << " vectors (pass --stats to z-normalize)\n";
  }
  auto pairs = LoadPairs(o.pairs, io);
  std::vector<DocumentPair> tune, eval = pairs;
  VerifyConfig config;
  if (o.threshold_opt->count()) {
    config.threshold = o.threshold;
  } else if (!o.tune_pairs.empty()) {
    tune = LoadPairs(o.tune_pairs, io);
  } else {
    PairSplit split = SplitPairs(pairs, o.tune_split, o.seed);
    tune = std::move(split.tune);
    eval = std::move(split.eval);
    io.manifest.seed = o.seed;
  }
  VerificationRun run = RunVerification(eval, tune, vectors, config);
  if (!o.results.empty()) {
    std::ostringstream s;
    WriteResultsCsv(run.results, s);
    WriteFileAtomic(o.results, s.str());
    io.manifest.AddOutput(o.results);
  }
  Emit(o.out, ReportToJson(run.report), io);
}

struct TuneOptions {
  std::string pairs;
  std::string vectors;
  std::string stats;
  std::string out;
};

void TuneCmd(const TuneOptions& o, Io& io) {
  auto vectors = LoadVectors(o.vectors, io);
  if (!o.stats.empty() && vectors[0].stage == Stage::kNormalized) {
    vectors = ZNormalizeAll(vectors, LoadStats(o.stats, io));
  }
  auto pairs = LoadPairs(o.pairs, io);
  VectorIndex index(vectors);
  auto scored = ScorePairs(pairs, index);
  ThresholdChoice c = TuneThreshold(scored);
  json j = {{"threshold", std::isfinite(c.threshold) ? json(c.threshold)
                                                     : json(FormatDouble(c.threshold))},
            {"balanced_accuracy", c.balanced_accuracy},
            {"n_pairs", pairs.size()}};
  Emit(o.out, j.dump(2) + "\n", io);
}

struct DetectOptions {
  std::string vectors;
  std::string docs;
  std::string model;
  std::string out;
  std::string full_out;
  std::string eval_vectors;
  std::string eval_docs;
  double l2 = TrainConfig{}.l2_strength;
  size_t max_iterations = TrainConfig{}.max_iterations;
  double tolerance = TrainConfig{}.tolerance;
  uint64_t seed = 0;
  std::string positive_class = TrainConfig{}.positive_class;
  size_t k = 10;
  std::string format = "table";

  TrainConfig Config() const {
    TrainConfig c;
    c.l2_strength = l2;
    c.max_iterations = max_iterations;
    c.tolerance = tolerance;
    c.seed = seed;
    c.positive_class = positive_class;
    return c;
  }
};

void DetectTrain(const DetectOptions& o, Io& io) {
  auto vectors = LoadVectors(o.vectors, io);
  auto labels = LabelsFor(vectors, LoadRecords(o.docs, io));
  io.manifest.seed = o.seed;
  DetectionModel m = Train(vectors, labels, o.Config());
  WriteModelFile(o.out, m);
  io.manifest.AddOutput(o.out);
  io.out << "trained on " << vectors.size() << " documents, " << m.weights.size()
         << " features: train accuracy " << FormatDouble(m.metrics.train_accuracy)
         << (m.metrics.converged ? "" : " (not converged)") << '\n';
}

void DetectEval(const DetectOptions& o, Io& io) {
  DetectionModel m = ReadModelFile(o.model);
  io.manifest.AddInput(o.model);
  auto vectors = LoadVectors(o.vectors, io);
  auto labels = LabelsFor(vectors, LoadRecords(o.docs, io));
  Emit(o.out, DetectionReportToJson(Evaluate(m, vectors, labels)), io);
}

void DetectTop(const DetectOptions& o, Io& io) {
  DetectionModel m = ReadModelFile(o.model);
  io.manifest.AddInput(o.model);
  auto top = TopFeatures(m, std::min(o.k, m.weights.size()));
  std::ostringstream s;
  ReportFormat f = ParseReportFormat(o.format);
  if (f == ReportFormat::kJson) {
    json a = json::array();
    for (const auto& [name, w] : top) a.push_back({{"feature", name}, {"weight", w}});
    s << a.dump(2) << '\n';
  } else if (f == ReportFormat::kCsv) {
    s << "feature,weight\n";
    for (const auto& [name, w] : top) {
      bool quote = name.find_first_of(",\"") != std::string::npos;
      std::string q = name;
      if (quote) {
        q.clear();
        for (char c : name) q += c == '"' ? std::string("\"\"") : std::string(1, c);
        q = "\"" + q + "\"";
      }
      s << q << ',' << FormatDouble(w) << '\n';
    }
  } else {
    size_t w = 7;
    for (const auto& [name, _] : top) w = std::max(w, name.size());
    s << "feature" << std::string(w - 7 + 2, ' ') << "weight\n";
    for (const auto& [name, weight] : top) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%+.3f", weight);
      s << name << std::string(w - name.size() + 2, ' ') << buf << '\n';
    }
  }
  Emit(o.out, s.str(), io);
}

void DetectRetrain(const DetectOptions& o, Io& io) {
  auto vectors = LoadVectors(o.vectors, io);
  auto labels = LabelsFor(vectors, LoadRecords(o.docs, io));
  io.manifest.seed = o.seed;
  RetrainResult r = RetrainTopK(vectors, labels, o.k, o.Config());
  WriteModelFile(o.out, r.reduced);
  io.manifest.AddOutput(o.out);
  if (!o.full_out.empty()) {
    WriteModelFile(o.full_out, r.full);
    io.manifest.AddOutput(o.full_out);
  }
  json j = {{"k", o.k},
            {"full_train_accuracy", r.full.metrics.train_accuracy},
            {"reduced_train_accuracy", r.reduced.metrics.train_accuracy},
            {"features", r.reduced.feature_names}};
  if (!o.eval_vectors.empty()) {
    if (o.eval_docs.empty()) throw UsageError("--eval-vectors requires --eval-docs");
    auto ev = LoadVectors(o.eval_vectors, io);
    auto el = LabelsFor(ev, LoadRecords(o.eval_docs, io));
    j["full_eval_accuracy"] = Evaluate(r.full, ev, el).accuracy;
    j["reduced_eval_accuracy"] = Evaluate(r.reduced, ev, el).accuracy;
  }
  io.out << j.dump(2) << '\n';
}

struct ExplainOptions {
  std::string vectors;
  std::string stats;
  std::string doc_a;
  std::string doc_b;
  double threshold = 0;
  std::string mode = "auto";
  size_t n = 10;
  std::string format = "table";
  std::string out;
};

void ExplainCmd(const ExplainOptions& o, Io& io) {
  auto vectors = LoadVectors(o.vectors, io);
  RequireZNormed(vectors, o.stats, io, "explain");
  VectorIndex index(vectors);
  const StyleVector& a = index.at(o.doc_a);
  const StyleVector& b = index.at(o.doc_b);
  ExplanationReport r;
  r.doc_a = o.doc_a;
  r.doc_b = o.doc_b;
  r.similarity = Cosine(a, b);
  r.threshold = o.threshold;
  r.predicted_same = Decide(r.similarity, o.threshold);
  r.mode = o.mode == "auto"
               ? (r.predicted_same ? ExplainMode::kSame : ExplainMode::kDifferent)
               : ParseExplainMode(o.mode);
  r.rows = ExplainPair(a, b, r.mode, o.n);
  Emit(o.out, RenderReport(r, ParseReportFormat(o.format)), io);
}

struct PatternsOptions {
  std::string pack;
  std::string corpus;
  std::string conllu;
  std::string label_scheme = "clearnlp";
  bool verbose = false;
};

fs::path ResolvePack(const std::string& name_or_path, const std::string& scheme) {
  std::string name = name_or_path.empty() ? "en-" + scheme : name_or_path;
  if (fs::exists(name)) return name;
  fs::path p = fs::path(STYLEVEC_DATA_DIR) / "patterns" / (name + ".pack");
  if (fs::exists(p)) return p;
  throw Error("pattern pack not found: " + name);
}

int PatternsTest(const PatternsOptions& o, Io& io) {
  fs::path pack = ResolvePack(o.pack, o.label_scheme);
  PatternSet patterns = LoadPatternPack(pack);
  io.manifest.AddInput(pack);
  fs::path corpus = o.corpus.empty() ? fs::path(STYLEVEC_DATA_DIR) / "conformance" /
                                           (patterns.language() + ".conllu")
                                     : fs::path(o.corpus);
  std::ifstream in(corpus, std::ios::binary);
  if (!in) throw Error("cannot open " + corpus.string());
  ConlluReadResult docs = ReadConllu(in);
  io.manifest.AddInput(corpus);
  if (!docs.errors.empty()) {
    throw Error(corpus.string() + ": " + docs.errors[0].message);
  }
  ConformanceReport rep = RunConformance(patterns, docs.documents);
  size_t passed = 0;
  for (const auto& c : rep.cases) {
    if (c.passed) {
      ++passed;
      if (o.verbose) io.out << "ok    " << c.doc_id << " (" << c.count << ")\n";
      continue;
    }
    io.out << "FAIL  " << c.doc_id << ": expected "
           << (c.expect_match ? "a match" : "no match") << ", got " << c.count << "\n"
           << "      " << c.linearized << '\n';
  }
  for (const auto& name : rep.under_covered) {
    io.out << "FAIL  " << name << ": needs at least 2 positive and 2 negative cases\n";
  }
  io.out << passed << "/" << rep.cases.size() << " cases passed for " << patterns.size()
         << " constructions (" << patterns.language() << ")\n";
  return rep.AllPassed() ? kExitOk : kExitDataError;
}

void PatternsLinearize(const PatternsOptions& o, Io& io) {
  std::ifstream in(o.conllu, std::ios::binary);
  if (!in) throw Error("cannot open " + o.conllu);
  ConlluReadResult r = ReadConllu(in);
  for (const auto& e : r.errors) {
    io.err << "warning: " << o.conllu << ":" << e.line << ": " << e.message << '\n';
  }
  for (const auto& d : r.documents) {
    for (size_t s = 0; s < d.sentences.size(); ++s) {
      io.out << d.doc_id << '\t' << s << '\t' << Linearize(d.sentences[s], s).text << '\n';
    }
  }
}

std::map<std::string, std::string> OptionValues(const CLI::App* app) {
  std::map<std::string, std::string> out;
  for (const CLI::Option* opt : app->get_options()) {
    const std::string name = opt->get_name();
    if (name.empty() || name == "--help" || name == "--version") continue;
    std::string value;
    if (opt->get_expected_min() == 0) {
      value = opt->count() > 0 ? "true" : "false";
    } else if (opt->count() > 0) {
      for (const auto& r : opt->results()) {
        if (!value.empty()) value += ',';
        value += r;
      }
    } else {
      value = opt->get_default_str();
    }
    out[name.substr(name.find_first_not_of('-'))] = value;
  }
  return out;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Grammatical style vectors: vectorize parsed text, verify "
               "authorship, detect generated text, explain decisions."};
  app.name("stylevec");
  app.set_version_flag("--version", STYLEVEC_VERSION);
  app.require_subcommand(1);

  VectorizeOptions vec;
  auto* vec_cmd = app.add_subcommand("vectorize", "CoNLL-U to style vectors");
  vec.corpus.Add(vec_cmd);
  vec.profile.Add(vec_cmd);
  vec_cmd->add_flag("--znorm", vec.znorm, "Z-normalize with --stats");
  vec_cmd->add_option("--stats", vec.stats, "Background stats JSON");
  vec_cmd->add_flag("--raw", vec.raw, "Write unnormalized counts");
  vec_cmd->add_option("--out,-o", vec.out, "Output .csv or .jsonl (default: CSV to stdout)");

  FitOptions fit;
  auto* fit_cmd = app.add_subcommand("fit-background", "Per-dimension mean and std");
  fit_cmd->add_option("--vectors", fit.vectors, "Normalized vectors")->required();
  fit_cmd->add_option("--out,-o", fit.out, "stats.json");

  ZnormOptions zn;
  auto* zn_cmd = app.add_subcommand("znorm", "Z-normalize vectors against a background");
  zn_cmd->add_option("--vectors", zn.vectors, "Normalized vectors")->required();
  zn_cmd->add_option("--stats", zn.stats, "Background stats JSON")->required();
  zn_cmd->add_option("--out,-o", zn.out, "Output vectors");

  PairsOptions pr;
  auto* pr_cmd = app.add_subcommand("pairs", "Sample same/different-author pairs");
  pr.corpus.Add(pr_cmd);
  pr_cmd->add_option("--same", pr.n_same, "Same-author pairs")->required();
  pr_cmd->add_option("--diff", pr.n_diff, "Different-author pairs")->required();
  pr_cmd->add_option("--seed", pr.seed, "Sampling seed");
  pr_cmd->add_option("--out,-o", pr.out, "Output pairs JSONL");

  VerifyOptions ver;
  auto* ver_cmd = app.add_subcommand("verify", "Cosine-similarity authorship verification");
  ver_cmd->add_option("--pairs", ver.pairs, "Evaluation pairs JSONL")->required();
  ver_cmd->add_option("--vectors", ver.vectors, "Vectors file")->required();
  ver_cmd->add_option("--stats", ver.stats, "Z-normalize normalized vectors first");
  ver_cmd->add_option("--profile", ver.profile, "Refuse vectors from another profile");
  ver.threshold_opt = ver_cmd->add_option("--threshold", ver.threshold, "Fixed threshold");
  ver_cmd->add_option("--tune-pairs", ver.tune_pairs, "Separate tuning pairs JSONL");
  ver.tune_split_opt = ver_cmd->add_option(
      "--tune-split", ver.tune_split, "Fraction of --pairs held out for tuning");
  ver_cmd->add_option("--seed", ver.seed, "Seed for --tune-split");
  ver_cmd->add_option("--out,-o", ver.out, "Report JSON");
  ver_cmd->add_option("--results", ver.results, "Per-pair CSV");

  TuneOptions tu;
  auto* tu_cmd = app.add_subcommand("tune", "Tune a verification threshold");
  tu_cmd->add_option("--pairs", tu.pairs, "Tuning pairs JSONL")->required();
  tu_cmd->add_option("--vectors", tu.vectors, "Vectors file")->required();
  tu_cmd->add_option("--stats", tu.stats, "Z-normalize normalized vectors first");
  tu_cmd->add_option("--out,-o", tu.out, "Output JSON");

  DetectOptions det;
  auto* det_cmd = app.add_subcommand("detect", "Human vs generated text classifier");
  det_cmd->require_subcommand(1);
  auto add_train = [&](CLI::App* c) {
    c->add_option("--vectors", det.vectors, "Training vectors")->required();
    c->add_option("--docs", det.docs, "JSONL with doc_id and label")->required();
    c->add_option("--l2", det.l2, "L2 strength")->capture_default_str();
    c->add_option("--max-iter", det.max_iterations, "Iteration cap")->capture_default_str();
    c->add_option("--tolerance", det.tolerance, "Gradient tolerance")->capture_default_str();
    c->add_option("--seed", det.seed, "Initialization seed");
    c->add_option("--positive-class", det.positive_class, "Positive label")
        ->capture_default_str();
  };
  auto* det_train = det_cmd->add_subcommand("train", "Train a model");
  add_train(det_train);
  det_train->add_option("--out,-o", det.out, "Model JSON")->required();
  auto* det_eval = det_cmd->add_subcommand("eval", "Accuracy of a model");
  det_eval->add_option("--model", det.model, "Model JSON")->required();
  det_eval->add_option("--vectors", det.vectors, "Vectors")->required();
  det_eval->add_option("--docs", det.docs, "JSONL with doc_id and label")->required();
  det_eval->add_option("--out,-o", det.out, "Report JSON");
  auto* det_top = det_cmd->add_subcommand("top", "Largest-magnitude weights");
  det_top->add_option("--model", det.model, "Model JSON")->required();
  det_top->add_option("--top-k,-k", det.k, "Rows")->capture_default_str();
  det_top->add_option("--format", det.format, "table, json or csv")
      ->check(CLI::IsMember({"table", "json", "csv"}));
  det_top->add_option("--out,-o", det.out, "Output file");
  auto* det_re = det_cmd->add_subcommand("retrain", "Retrain on the top-k features");
  add_train(det_re);
  det_re->add_option("--top-k,-k", det.k, "Features kept")->capture_default_str();
  det_re->add_option("--out,-o", det.out, "Reduced model JSON")->required();
  det_re->add_option("--full-out", det.full_out, "Full model JSON");
  det_re->add_option("--eval-vectors", det.eval_vectors, "Held-out vectors");
  det_re->add_option("--eval-docs", det.eval_docs, "Held-out labels");

  ExplainOptions ex;
  auto* ex_cmd = app.add_subcommand("explain", "Top features behind a verification");
  ex_cmd->add_option("--vectors", ex.vectors, "Vectors file")->required();
  ex_cmd->add_option("--stats", ex.stats, "Z-normalize normalized vectors first");
  ex_cmd->add_option("--a", ex.doc_a, "First document id")->required();
  ex_cmd->add_option("--b", ex.doc_b, "Second document id")->required();
  ex_cmd->add_option("--threshold", ex.threshold, "Decision threshold")->required();
  ex_cmd->add_option("--mode", ex.mode, "auto, same or different")
      ->check(CLI::IsMember({"auto", "same", "different"}));
  ex_cmd->add_option("--top-n,-n", ex.n, "Rows")->capture_default_str();
  ex_cmd->add_option("--format", ex.format, "table, json or csv")
      ->check(CLI::IsMember({"table", "json", "csv"}));
  ex_cmd->add_option("--out,-o", ex.out, "Output file");

  PatternsOptions pat;
  auto* pat_cmd = app.add_subcommand("patterns", "Construction pattern tools");
  pat_cmd->require_subcommand(1);
  auto* pat_test = pat_cmd->add_subcommand("test", "Run a pack's conformance corpus");
  pat_test->add_option("--pack", pat.pack, "Pack file or name (en-clearnlp, en-ud)");
  pat_test->add_option("--label-scheme", pat.label_scheme, "Default pack selector")
      ->check(CLI::IsMember({"clearnlp", "ud"}));
  pat_test->add_option("--corpus", pat.corpus, "Conformance CoNLL-U");
  pat_test->add_flag("--verbose,-v", pat.verbose, "List passing cases too");
  auto* pat_lin = pat_cmd->add_subcommand("linearize", "Print linearized trees");
  pat_lin->add_option("--conllu", pat.conllu, "CoNLL-U input")->required();

  std::vector<std::string> argv = {"stylevec"};
  argv.insert(argv.end(), args.begin(), args.end());
  std::vector<char*> cargv;
  for (auto& a : argv) cargv.push_back(a.data());
  try {
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  Io io{out, err, {}};
  io.manifest.argv = args;
  io.manifest.version = STYLEVEC_VERSION;
  io.manifest.started_at = UtcTimestamp();
  const CLI::App* leaf = &app;
  while (!leaf->get_subcommands().empty()) leaf = leaf->get_subcommands().front();
  io.manifest.config = OptionValues(leaf);
  for (const CLI::App* a = leaf; a && a != &app; a = a->get_parent()) {
    io.manifest.command = a->get_name() + (io.manifest.command.empty() ? "" : " ") +
                          io.manifest.command;
  }

  int code = kExitOk;
  try {
    if (*vec_cmd) Vectorize(vec, io);
    else if (*fit_cmd) FitBackgroundCmd(fit, io);
    else if (*zn_cmd) ZnormCmd(zn, io);
    else if (*pr_cmd) PairsCmd(pr, io);
    else if (*ver_cmd) VerifyCmd(ver, io);
    else if (*tu_cmd) TuneCmd(tu, io);
    else if (*det_train) DetectTrain(det, io);
    else if (*det_eval) DetectEval(det, io);
    else if (*det_top) DetectTop(det, io);
    else if (*det_re) DetectRetrain(det, io);
    else if (*ex_cmd) ExplainCmd(ex, io);
    else if (*pat_test) code = PatternsTest(pat, io);
    else if (*pat_lin) PatternsLinearize(pat, io);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDataError;
  }

  io.manifest.finished_at = UtcTimestamp();
  try {
    for (const auto& o : io.manifest.outputs) {
      WriteFileAtomic(ManifestPathFor(o.path), io.manifest.ToJson());
    }
  } catch (const std::exception& e) {
    err << "error: writing manifest: " << e.what() << '\n';
    return kExitDataError;
  }
  return code;
}

}  // namespace stylevec::cli
