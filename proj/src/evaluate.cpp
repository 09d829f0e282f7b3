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

#include "subsparse/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace subsparse {

using nlohmann::json;

Rouge2Score rouge2(const TokenList& candidate, const TokenList& reference) {
  Rouge2Score out;
  if (reference.size() < 2) return out;
  const auto bigrams = [](const TokenList& t) {
    std::map<std::pair<std::string, std::string>, int> counts;
    for (std::size_t i = 0; i + 1 < t.size(); ++i) ++counts[{t[i], t[i + 1]}];
    return counts;
  };
  const auto ref = bigrams(reference);
  const auto cand = bigrams(candidate);
  long long overlap = 0, ref_total = 0, cand_total = 0;
  for (const auto& [bg, cnt] : ref) ref_total += cnt;
  for (const auto& [bg, cnt] : cand) {
    cand_total += cnt;
    const auto it = ref.find(bg);
    if (it != ref.end()) overlap += std::min(cnt, it->second);
  }
  out.recall = static_cast<double>(overlap) / static_cast<double>(ref_total);
  if (cand_total > 0) out.precision = static_cast<double>(overlap) / static_cast<double>(cand_total);
  if (out.recall + out.precision > 0.0) {
    out.f1 = 2.0 * out.recall * out.precision / (out.recall + out.precision);
  }
  return out;
}

std::optional<double> relative_utility(const Solution& sol, const Solution& baseline) {
  if (baseline.value == 0.0) return std::nullopt;
  return sol.value / baseline.value;
}

namespace {

std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(17);
  ss << v;
  return ss.str();
}

json row_to_json(const BenchmarkRow& r, bool include_timings) {
  json j{{"dataset_id", r.dataset_id}, {"n", r.n},
         {"algorithm", r.algorithm},  {"k", r.k},
         {"value", r.value},          {"evals_used", r.evals_used},
         {"seed", r.seed},            {"wall_time_s", include_timings ? r.wall_time_s : 0.0}};
  j["relative_utility"] = r.rel_utility ? json(*r.rel_utility) : json();
  j["vprime_size"] = r.vprime_size ? json(*r.vprime_size) : json();
  if (r.error) j["error"] = *r.error;
  return j;
}

}  // namespace

std::string BenchmarkReport::to_csv(bool include_timings) const {
  std::ostringstream out;
  out << "dataset_id,n,algorithm,k,value,relative_utility,vprime_size,wall_time_s,evals_used,"
         "seed\n";
  for (const auto& r : rows) {
    out << r.dataset_id << "," << r.n << "," << r.algorithm << "," << r.k << "," << fmt(r.value)
        << ",";
    if (r.rel_utility) out << fmt(*r.rel_utility);
    out << ",";
    if (r.vprime_size) out << *r.vprime_size;
    out << "," << fmt(include_timings ? r.wall_time_s : 0.0) << "," << r.evals_used << ","
        << r.seed << "\n";
  }
  return out.str();
}

std::string BenchmarkReport::to_json(bool include_timings) const {
  json rows_json = json::array();
  for (const auto& r : rows) rows_json.push_back(row_to_json(r, include_timings));
  return json{{"rows", rows_json}}.dump(2);
}

BenchmarkReport run_benchmark(const SuiteConfig& cfg) {
  BenchmarkReport report;
  for (const auto& ds : cfg.datasets) {
    Objective objective = [&] {
      if (ds.matrix_path) return Objective::feature_sqrt(load_feature_matrix(*ds.matrix_path));
      if (ds.synth) return Objective::feature_sqrt(generate_synthetic(*ds.synth));
      throw std::invalid_argument("dataset " + ds.id + " has no source");
    }();
    const int n = objective.n_elements();
    std::vector<int> ground(static_cast<std::size_t>(n));
    std::iota(ground.begin(), ground.end(), 0);
    const int k = cfg.k > 0 ? cfg.k : static_cast<int>(std::ceil(0.15 * n));

    const Solution baseline = lazy_greedy(objective, ground, k);

    for (std::uint64_t seed : cfg.seeds) {
      for (const std::string& algo : cfg.algorithms) {
        const auto emit = [&](Solution sol, std::optional<int> vprime_size) {
          BenchmarkRow row;
          row.dataset_id = ds.id;
          row.n = n;
          row.algorithm = sol.algorithm;
          row.k = k;
          row.value = sol.value;
          row.rel_utility = relative_utility(sol, baseline);
          row.vprime_size = vprime_size;
          row.wall_time_s = sol.wall_time_s;
          row.evals_used = sol.evals_used;
          row.seed = seed;
          report.rows.push_back(std::move(row));
        };
        try {
          if (algo == "greedy") {
            emit(greedy(objective, ground, k), std::nullopt);
          } else if (algo == "lazy_greedy") {
            emit(lazy_greedy(objective, ground, k), std::nullopt);
          } else if (algo == "sieve_streaming") {
            emit(sieve_streaming(objective, ground, k, cfg.sieve), std::nullopt);
          } else if (algo == "ss") {
            for (double r : cfg.r_values) {
              SparsifierConfig sc;
              sc.r = r;
              sc.c = cfg.c;
              sc.seed = seed;
              sc.sampling = cfg.sampling;
              const auto t0 = std::chrono::steady_clock::now();
              const SparsifyResult sr = sparsify(objective, ground, sc);
              Solution sol = lazy_greedy(objective, sr.kept, k);
              sol.algorithm = "ss_r" + std::to_string(static_cast<int>(r));
              sol.wall_time_s =
                  std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
              emit(std::move(sol), static_cast<int>(sr.kept.size()));
            }
          } else {
            throw std::invalid_argument("unknown algorithm: " + algo);
          }
        } catch (const std::exception& e) {
          BenchmarkRow row;
          row.dataset_id = ds.id;
          row.n = n;
          row.algorithm = algo;
          row.k = k;
          row.seed = seed;
          row.error = e.what();
          report.rows.push_back(std::move(row));
        }
      }
    }
  }
  std::sort(report.rows.begin(), report.rows.end(), [](const BenchmarkRow& a, const BenchmarkRow& b) {
    return std::tie(a.dataset_id, a.algorithm, a.k, a.seed) <
           std::tie(b.dataset_id, b.algorithm, b.k, b.seed);
  });
  return report;
}

SuiteConfig parse_suite_config(const std::string& json_text) {
  const json j = json::parse(json_text);
  SuiteConfig cfg;
  for (const auto& d : j.at("datasets")) {
    BenchmarkDataset ds;
    ds.id = d.at("id").get<std::string>();
    if (d.contains("matrix_path")) ds.matrix_path = d.at("matrix_path").get<std::string>();
    if (d.contains("synth")) {
      const auto& s = d.at("synth");
      SynthConfig sc;
      sc.n_elements = s.at("n_elements").get<int>();
      sc.n_features = s.at("n_features").get<int>();
      sc.nnz_per_element = s.at("nnz_per_element").get<int>();
      sc.cluster_count = s.value("cluster_count", 1);
      sc.noise = s.value("noise", 0.05);
      sc.zipf_s = s.value("zipf_s", 1.0);
      sc.weight_law = s.value("weight_law", std::string("uniform")) == "zipf" ? WeightLaw::zipf
                                                                             : WeightLaw::uniform;
      sc.seed = s.value("seed", std::uint64_t{0});
      ds.synth = sc;
    }
    cfg.datasets.push_back(std::move(ds));
  }
  cfg.algorithms = j.at("algorithms").get<std::vector<std::string>>();
  cfg.k = j.value("k", 0);
  if (j.contains("seeds")) cfg.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
  if (j.contains("r_values")) cfg.r_values = j.at("r_values").get<std::vector<double>>();
  cfg.c = j.value("c", 8.0);
  cfg.sampling = j.value("sampling", std::string("uniform")) == "importance"
                     ? SamplingMode::importance
                     : SamplingMode::uniform;
  cfg.sieve.n_thresholds = j.value("sieve_thresholds", 50);
  return cfg;
}

std::string solution_to_json(const Solution& sol, bool include_timings) {
  json j{{"algorithm", sol.algorithm},
         {"k", sol.k},
         {"selected", sol.selected},
         {"value", sol.value},
         {"step_gains", sol.step_gains},
         {"wall_time_s", include_timings ? sol.wall_time_s : 0.0},
         {"evals_used", sol.evals_used}};
  return j.dump(2);
}

std::string trace_to_json(const PruneTrace& trace, const SparsifierConfig& cfg) {
  json iters = json::array();
  for (const auto& it : trace.iterations) {
    iters.push_back(json{{"size_before", it.size_before},
                         {"sample_size", it.sample_size},
                         {"sampled", it.sampled},
                         {"removed_count", it.removed_count},
                         {"removed", it.removed},
                         {"kept_size", it.kept_size}});
  }
  json j{{"config",
          {{"r", cfg.r},
           {"c", cfg.c},
           {"seed", cfg.seed},
           {"sampling", cfg.sampling == SamplingMode::uniform ? "uniform" : "importance"},
           {"pre_prune", cfg.pre_prune},
           {"post_reduce_eps",
            cfg.post_reduce_eps ? json(*cfg.post_reduce_eps) : json()}}},
         {"iterations", iters},
         {"final_set", trace.final_set},
         {"total_weight_evals", trace.total_weight_evals}};
  return j.dump(2);
}

}  // namespace subsparse
