// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "subsparse/data_io.hpp"
#include "subsparse/evaluate.hpp"
#include "subsparse/graph.hpp"
#include "subsparse/maximize.hpp"
#include "subsparse/sparsify.hpp"
#include "subsparse/validation.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using nlohmann::json;
using namespace subsparse;

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << text;
  if (text.empty() || text.back() != '\n') out << "\n";
}

std::vector<std::string> glob_txt(const std::string& dir) {
  std::vector<std::string> out;
  if (!std::filesystem::is_directory(dir)) return out;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".txt") {
      out.push_back(e.path().string());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> full_ground(const Objective& obj) {
  std::vector<int> g(static_cast<std::size_t>(obj.n_elements()));
  std::iota(g.begin(), g.end(), 0);
  return g;
}

int resolve_k(int k, int n) {
  return k > 0 ? k : static_cast<int>(std::ceil(0.15 * n));
}

struct SparsifyFlags {
  double r = 8.0;
  double c = 8.0;
  std::uint64_t seed = 0;
  std::string sampling = "uniform";
  bool pre_prune = false;
  double post_reduce_eps = 0.0;
  bool has_post_reduce = false;

  SparsifierConfig to_config() const {
    SparsifierConfig cfg;
    cfg.r = r;
    cfg.c = c;
    cfg.seed = seed;
    cfg.sampling = sampling == "importance" ? SamplingMode::importance : SamplingMode::uniform;
    cfg.pre_prune = pre_prune;
    if (has_post_reduce) cfg.post_reduce_eps = post_reduce_eps;
    return cfg;
  }
};

void add_sparsify_flags(CLI::App* cmd, SparsifyFlags* f) {
  cmd->add_option("--r", f->r, "probe-set scale (samples ceil(r log2 n) per round)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--c", f->c, "shrink tradeoff, removes a (1 - 1/sqrt(c)) fraction")
      ->check(CLI::Range(1.0 + 1e-9, 1e9));
  cmd->add_option("--seed", f->seed, "RNG seed");
  cmd->add_option("--sampling", f->sampling, "probe sampling mode")
      ->check(CLI::IsMember({"uniform", "importance"}));
  cmd->add_flag("--pre-prune", f->pre_prune, "drop elements below the k-th global gain first");
  cmd->add_option("--post-reduce-eps", f->post_reduce_eps,
                  "double-greedy reduction threshold applied to V'")
      ->each([f](const std::string&) { f->has_post_reduce = true; });
}

json sparsify_config_json(const SparsifierConfig& cfg) {
  return json{{"r", cfg.r},
              {"c", cfg.c},
              {"seed", cfg.seed},
              {"sampling", cfg.sampling == SamplingMode::uniform ? "uniform" : "importance"},
              {"pre_prune", cfg.pre_prune},
              {"post_reduce_eps",
               cfg.post_reduce_eps ? json(*cfg.post_reduce_eps) : json()}};
}

int cmd_ingest(const std::string& corpus_dir, const std::string& out_path) {
  const std::vector<std::string> docs = glob_txt(corpus_dir + "/docs");
  const std::vector<std::string> refs = glob_txt(corpus_dir + "/refs");
  if (docs.empty()) {
    std::cerr << "error: no .txt documents under " << corpus_dir << "/docs\n";
    return 1;
  }
  const Corpus corpus = ingest_corpus(docs, refs);
  const FeatureMatrix m = tfidf_featurize(corpus);
  save_feature_matrix(m, out_path);
  const json meta{{"version", kVersion},
                  {"config", {{"subcommand", "ingest"}, {"corpus", corpus_dir}, {"out", out_path}}},
                  {"documents", docs.size()},
                  {"references", refs.size()},
                  {"n_elements", m.n_elements},
                  {"n_features", m.n_features},
                  {"nnz", m.entries.size()}};
  std::cout << meta.dump(2) << "\n";
  return 0;
}

int cmd_sparsify(const std::string& input, const SparsifyFlags& flags, int k,
                 const std::string& out_path, const std::string& out_set_path) {
  const Objective obj = Objective::feature_sqrt(load_feature_matrix(input));
  std::vector<int> ground = full_ground(obj);
  const SparsifierConfig cfg = flags.to_config();
  const int k_eff = resolve_k(k, obj.n_elements());
  if (cfg.pre_prune) ground = pre_prune(obj, ground, k_eff);
  const SparsifyResult res = sparsify(obj, ground, cfg);
  std::vector<int> kept = res.kept;
  if (cfg.post_reduce_eps) {
    kept = post_reduce(obj, kept, *cfg.post_reduce_eps, cfg.seed);
  }

  json out = json::parse(trace_to_json(res.trace, cfg));
  out["version"] = kVersion;
  out["config"]["subcommand"] = "sparsify";
  out["config"]["input"] = input;
  out["config"]["k"] = k_eff;
  out["kept"] = kept;
  out["kept_size"] = kept.size();
  out["ground_size"] = obj.n_elements();
  write_text(out_path, out.dump(2));

  if (!out_set_path.empty()) {
    std::ostringstream ids;
    for (int v : kept) ids << v << "\n";
    write_text(out_set_path, ids.str());
  }
  return 0;
}

int cmd_summarize(const std::string& input, const std::string& corpus_dir, int k,
                  const std::string& algo, const SparsifyFlags& flags, bool no_timings,
                  const std::string& out_path) {
  Objective obj = [&] {
    if (!input.empty()) return Objective::feature_sqrt(load_feature_matrix(input));
    const std::vector<std::string> docs = glob_txt(corpus_dir + "/docs");
    if (docs.empty()) throw std::runtime_error("no .txt documents under " + corpus_dir + "/docs");
    return Objective::feature_sqrt(
        tfidf_featurize(ingest_corpus(docs, glob_txt(corpus_dir + "/refs"))));
  }();

  // With references, the budget defaults to the first reference's sentence
  // count; otherwise ceil(0.15 n).
  std::vector<TokenList> ref_tokens;
  std::vector<TokenList> sentences;
  if (!corpus_dir.empty()) {
    const Corpus corpus =
        ingest_corpus(glob_txt(corpus_dir + "/docs"), glob_txt(corpus_dir + "/refs"));
    sentences = corpus_sentences(corpus);
    ref_tokens = corpus.reference_summaries;
  }
  int k_eff = k;
  if (k_eff <= 0 && !ref_tokens.empty()) {
    const std::vector<std::string> refs = glob_txt(corpus_dir + "/refs");
    std::ifstream in(refs.front(), std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    k_eff = std::max<int>(1, static_cast<int>(tokenize_document(ss.str()).size()));
  }
  k_eff = resolve_k(k_eff, obj.n_elements());

  std::vector<int> ground = full_ground(obj);
  const SparsifierConfig cfg = flags.to_config();
  if (cfg.pre_prune) ground = pre_prune(obj, ground, k_eff);
  json extra;
  if (algo == "ss") {
    SparsifyResult res = sparsify(obj, ground, cfg);
    ground = std::move(res.kept);
    if (cfg.post_reduce_eps) ground = post_reduce(obj, ground, *cfg.post_reduce_eps, cfg.seed);
    extra["vprime_size"] = ground.size();
  }
  Solution sol;
  if (algo == "greedy") {
    sol = greedy(obj, ground, k_eff);
  } else if (algo == "sieve_streaming") {
    sol = sieve_streaming(obj, ground, k_eff, SieveConfig{});
  } else {
    sol = lazy_greedy(obj, ground, k_eff);  // lazy_greedy and ss
  }

  json out = json::parse(solution_to_json(sol, !no_timings));
  out["version"] = kVersion;
  out["config"] = sparsify_config_json(cfg);
  out["config"]["subcommand"] = "summarize";
  out["config"]["algo"] = algo;
  out["config"]["k"] = k_eff;
  out["config"]["input"] = input.empty() ? corpus_dir : input;
  for (auto& [key, val] : extra.items()) out[key] = val;

  if (!sentences.empty()) {
    json sel = json::array();
    TokenList candidate;
    for (int v : sol.selected) {
      const TokenList& s = sentences[static_cast<std::size_t>(v)];
      candidate.insert(candidate.end(), s.begin(), s.end());
      std::string joined;
      for (const std::string& t : s) {
        if (!joined.empty()) joined += ' ';
        joined += t;
      }
      sel.push_back(joined);
    }
    out["summary_sentences"] = sel;
    if (!ref_tokens.empty()) {
      json rouge = json::array();
      for (const TokenList& ref : ref_tokens) {
        const Rouge2Score sc = rouge2(candidate, ref);
        rouge.push_back(json{{"recall", sc.recall}, {"precision", sc.precision}, {"f1", sc.f1}});
      }
      out["rouge2"] = rouge;
    }
  }
  write_text(out_path, out.dump(2));
  return 0;
}

int cmd_benchmark(const std::string& suite_path, const std::string& out_csv,
                  const std::string& out_json, bool no_timings) {
  std::ifstream in(suite_path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read file: " + suite_path);
  std::ostringstream ss;
  ss << in.rdbuf();
  const SuiteConfig cfg = parse_suite_config(ss.str());
  const BenchmarkReport report = run_benchmark(cfg);
  if (!out_csv.empty()) write_text(out_csv, report.to_csv(!no_timings));
  if (!out_json.empty()) {
    json out = json::parse(report.to_json(!no_timings));
    out["version"] = kVersion;
    out["config"] = json::parse(ss.str());
    out["config"]["subcommand"] = "benchmark";
    write_text(out_json, out.dump(2));
  }
  if (out_csv.empty() && out_json.empty()) std::cout << report.to_csv(!no_timings);
  return 0;
}

int cmd_validate(bool quick, std::uint64_t seed) {
  const std::vector<CheckResult> results = run_validation_suite(quick, seed);
  bool all_ok = true;
  for (const CheckResult& r : results) {
    std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << r.name;
    if (!r.detail.empty()) std::cout << " — " << r.detail;
    std::cout << "\n";
    all_ok = all_ok && r.passed;
  }
  std::cout << (all_ok ? "all checks passed" : "CHECK FAILURES PRESENT") << "\n";
  return all_ok ? 0 : 2;
}

int cmd_graph_audit(const std::string& input, int samples, std::uint64_t seed,
                    const std::string& out_path) {
  const Objective obj = Objective::feature_sqrt(load_feature_matrix(input));
  const std::vector<int> ground = full_ground(obj);
  const GlobalGains globals = compute_global_gains(obj, ground);
  const GraphWeights weights(obj, globals);
  Rng rng(seed);
  std::ostringstream out;
  out << "# version=" << kVersion << " subcommand=graph-audit input=" << input
      << " samples=" << samples << " seed=" << seed << "\n";
  out << "u,v,weight\n";
  out.precision(17);
  const auto n = static_cast<std::uint64_t>(obj.n_elements());
  for (int i = 0; i < samples; ++i) {
    const int u = static_cast<int>(rng.next_below(n));
    const int v = static_cast<int>(rng.next_below(n));
    out << u << "," << v << "," << weights.edge_weight(u, v) << "\n";
  }
  write_text(out_path, out.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"submodular maximization with ground-set sparsification"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  int threads = 1;  // accepted for interface stability; execution is single-threaded
  app.add_option("--threads", threads, "worker cap (results are thread-count independent)")
      ->check(CLI::PositiveNumber);

  std::string corpus_dir, input, out_path, out_set_path, algo = "lazy_greedy";
  std::string suite_path, out_csv, out_json;
  int k = 0, samples = 1000;
  bool no_timings = false, quick = false;
  SparsifyFlags sflags;
  std::uint64_t vseed = 17;

  CLI::App* ingest = app.add_subcommand("ingest", "corpus directory to TF-IDF feature matrix");
  ingest->add_option("--corpus", corpus_dir, "directory with docs/*.txt and optional refs/*.txt")
      ->required();
  ingest->add_option("--out", out_path, "feature matrix output path")->required();

  CLI::App* sparsify_cmd = app.add_subcommand("sparsify", "prune a ground set, emit V' + trace");
  sparsify_cmd->add_option("--input", input, "feature matrix path")->required();
  add_sparsify_flags(sparsify_cmd, &sflags);
  sparsify_cmd->add_option("--k", k, "budget used by --pre-prune (0: ceil(0.15 n))");
  sparsify_cmd->add_option("--out", out_path, "trace JSON path (default stdout)");
  sparsify_cmd->add_option("--out-set", out_set_path, "kept element ids, one per line");

  CLI::App* summarize = app.add_subcommand("summarize", "select a k-element summary");
  summarize->add_option("--input", input, "feature matrix path");
  summarize->add_option("--corpus", corpus_dir, "corpus directory (alternative to --input)");
  summarize->add_option("--k", k, "budget (0: reference sentence count, else ceil(0.15 n))");
  summarize->add_option("--algo", algo, "selection algorithm")
      ->check(CLI::IsMember({"greedy", "lazy_greedy", "sieve_streaming", "ss"}));
  add_sparsify_flags(summarize, &sflags);
  summarize->add_flag("--no-timings", no_timings, "zero the wall-time field");
  summarize->add_option("--out", out_path, "solution JSON path (default stdout)");

  CLI::App* benchmark = app.add_subcommand("benchmark", "run a benchmark suite");
  benchmark->add_option("--suite", suite_path, "suite config JSON")->required();
  benchmark->add_option("--out-csv", out_csv, "CSV report path");
  benchmark->add_option("--out-json", out_json, "JSON report path");
  benchmark->add_flag("--no-timings", no_timings, "zero wall-time columns");

  CLI::App* validate = app.add_subcommand("validate", "run the property-check suite");
  validate->add_flag("--quick", quick, "reduced instance counts");
  validate->add_option("--seed", vseed, "suite RNG seed");

  CLI::App* audit = app.add_subcommand("graph-audit", "dump sampled edge weights as CSV");
  audit->add_option("--input", input, "feature matrix path")->required();
  audit->add_option("--samples", samples, "number of (u, v) pairs")->check(CLI::PositiveNumber);
  audit->add_option("--seed", sflags.seed, "RNG seed");
  audit->add_option("--out", out_path, "CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints help or the usage error
    return code == 0 ? 0 : 1;
  }

  try {
    if (*ingest) return cmd_ingest(corpus_dir, out_path);
    if (*sparsify_cmd) return cmd_sparsify(input, sflags, k, out_path, out_set_path);
    if (*summarize) {
      if (input.empty() == corpus_dir.empty()) {
        std::cerr << "error: summarize needs exactly one of --input / --corpus\n";
        return 1;
      }
      return cmd_summarize(input, corpus_dir, k, algo, sflags, no_timings, out_path);
    }
    if (*benchmark) return cmd_benchmark(suite_path, out_csv, out_json, no_timings);
    if (*validate) return cmd_validate(quick, vseed);
    if (*audit) return cmd_graph_audit(input, samples, sflags.seed, out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
