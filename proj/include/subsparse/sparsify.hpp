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
#include <span>
#include <string>
#include <vector>

#include "subsparse/graph.hpp"
#include "subsparse/objective.hpp"
#include "subsparse/rng.hpp"

namespace subsparse {

enum class SamplingMode { uniform, importance };

struct SparsifierConfig {
  double r = 8.0;   // probe-set scale: sample ceil(r * log2 n) per round
  double c = 8.0;   // shrink tradeoff, removes a (1 - 1/sqrt(c)) fraction
  std::uint64_t seed = 0;
  SamplingMode sampling = SamplingMode::uniform;
  bool pre_prune = false;          // consumed by the pipeline, not sparsify()
  std::optional<double> post_reduce_eps;
};

struct PruneIteration {
  int size_before = 0;
  int sample_size = 0;
  std::vector<int> sampled;
  int removed_count = 0;
  std::vector<int> removed;
  int kept_size = 0;
};

struct PruneTrace {
  std::vector<PruneIteration> iterations;
  std::vector<int> final_set;  // sorted
  std::uint64_t total_weight_evals = 0;
};

struct SparsifyResult {
  std::vector<int> kept;  // V', sorted
  PruneTrace trace;
};

// Randomized multi-round pruning: sample ceil(r log2 n) probes into V',
// then drop the floor((1 - 1/sqrt(c)) |V|) remaining elements with the
// smallest divergence from the probes. n is frozen at the original |V|;
// global gains are computed once against the original ground set.
// Deterministic given the seed.
SparsifyResult sparsify(const Objective& objective, std::span<const int> ground,
                        const SparsifierConfig& cfg);

// Drops every u whose singleton value is below the k-th largest global
// gain; never shrinks below k elements, and never changes the greedy
// solution of the cardinality-k problem.
std::vector<int> pre_prune(const Objective& objective, std::span<const int> ground, int k);

// s distinct elements drawn without replacement with probability
// proportional to max(f({u}) + g[u], floor); falls back to uniform when no
// score is positive.
std::vector<int> importance_sample(std::span<const int> ground, const GlobalGains& globals,
                                   const GraphWeights& weights, int s, Rng& rng);

// Double-greedy reduction of V' against the pruning objective with
// threshold eps; every dropped element keeps divergence <= eps from the
// returned set. Guarded at |V'| <= 5000.
std::vector<int> post_reduce(const Objective& objective, std::span<const int> vprime,
                             double eps, std::uint64_t seed);

}  // namespace subsparse
