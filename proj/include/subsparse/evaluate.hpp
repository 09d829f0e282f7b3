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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "subsparse/data_io.hpp"
#include "subsparse/maximize.hpp"
#include "subsparse/sparsify.hpp"

namespace subsparse {

struct Rouge2Score {
  double recall = 0.0;
  double precision = 0.0;
  double f1 = 0.0;
};

// Bigram overlap with clipped counts; zero on references shorter than two
// tokens.
Rouge2Score rouge2(const TokenList& candidate, const TokenList& reference);

// f(S) / f(S_greedy); absent when the baseline value is zero.
std::optional<double> relative_utility(const Solution& sol, const Solution& baseline);

struct BenchmarkRow {
  std::string dataset_id;
  int n = 0;
  std::string algorithm;
  int k = 0;
  double value = 0.0;
  std::optional<double> rel_utility;
  std::optional<int> vprime_size;
  double wall_time_s = 0.0;
  std::uint64_t evals_used = 0;
  std::uint64_t seed = 0;
  std::optional<std::string> error;
};

struct BenchmarkReport {
  std::vector<BenchmarkRow> rows;

  std::string to_csv(bool include_timings = true) const;
  std::string to_json(bool include_timings = true) const;
};

struct BenchmarkDataset {
  std::string id;
  std::optional<std::string> matrix_path;
  std::optional<SynthConfig> synth;
};

struct SuiteConfig {
  std::vector<BenchmarkDataset> datasets;
  // Supported: greedy, lazy_greedy, sieve_streaming, ss (sparsify + lazy).
  std::vector<std::string> algorithms;
  int k = 0;  // 0: ceil(0.15 n)
  std::vector<std::uint64_t> seeds = {0};
  std::vector<double> r_values = {8.0};  // ss rows, one per r
  double c = 8.0;
  SamplingMode sampling = SamplingMode::uniform;
  SieveConfig sieve;
};

// Runs every (dataset, algorithm, seed) cell; the ss rows additionally
// sweep r. Per-row failures are recorded and the run continues. Rows are
// sorted before emission; value columns are deterministic for fixed seeds.
BenchmarkReport run_benchmark(const SuiteConfig& cfg);

SuiteConfig parse_suite_config(const std::string& json_text);

// JSON emission for CLI artifacts.
std::string solution_to_json(const Solution& sol, bool include_timings = true);
std::string trace_to_json(const PruneTrace& trace, const SparsifierConfig& cfg);

}  // namespace subsparse
