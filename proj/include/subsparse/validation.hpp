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
#include <string>
#include <vector>

#include "subsparse/objective.hpp"
#include "subsparse/rng.hpp"

namespace subsparse {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;  // counts, worst violation, etc.
};

// Seeded random instances used across the property checks.
Objective random_feature_sqrt_objective(Rng& rng, int n, int n_features, int nnz);
// Weighted-coverage value table (monotone submodular by construction).
Objective random_coverage_table_objective(Rng& rng, int n);

// Each check draws its own instances from `seed` and is deterministic.
// `instances` scales work; per-check sampling counts are documented inline.

// Diminishing returns, monotonicity, normalization, incremental-gain
// consistency of the two production objective kinds.
CheckResult check_objective_properties(std::uint64_t seed, int instances, int n);

// Conditioning monotonicity: P subset of S implies w(u,v|S) <= w(u,v|P).
CheckResult check_lemma1(std::uint64_t seed, int samples, int n);
// Marginal-gain bound: f(v|S) <= f(u|S) + w(u,v|S).
CheckResult check_lemma2(std::uint64_t seed, int samples, int n);
// Directed triangle inequality over all ordered triples.
CheckResult check_lemma3(std::uint64_t seed, int instances, int n);
// Pruning price: the best retained element loses at most the divergence.
CheckResult check_pruning_price(std::uint64_t seed, int samples, int n);

// Exhaustive submodularity / nonnegativity of h, h(V) = 0, monotonicity in
// epsilon, and agreement of the direct and set-cover formulas (n <= 8).
CheckResult check_h_properties(std::uint64_t seed, int instances, int n);

// Greedy-on-V* value >= (1 - 1/e)(OPT - k eps) over an epsilon grid with
// |V*| >= k (brute-force oracles; n <= 10).
CheckResult check_approximation_bound(std::uint64_t seed, int instances, int n, int k);

// greedy.value >= (1 - 1/e) brute_force.value on feature and table instances.
CheckResult check_greedy_ratio(std::uint64_t seed, int instances, int n, int k);
// Identical lazy/eager selections; lazy uses fewer evaluations at n >= 50.
CheckResult check_lazy_equivalence(std::uint64_t seed, int instances, int n);
// Sieve value >= 0.4 OPT; retained ids never exceed thresholds x k.
CheckResult check_sieve_guarantee(std::uint64_t seed, int instances, int n, int k);
// Deterministic double greedy >= (1/3) max h; randomized seed-mean >= 0.45 max h.
CheckResult check_double_greedy_bounds(std::uint64_t seed, int instances, int n,
                                       int randomized_seeds);
// Greedy value unchanged by the singleton-threshold pre-prune.
CheckResult check_pre_prune_safety(std::uint64_t seed, int instances, int n, int k);

// Recorded prune-trace sizes reproduce the shrink recursion; iteration
// count within bound; removed divergences <= kept divergences; reruns
// identical.
CheckResult check_trace_arithmetic(std::uint64_t seed, int n, double r, double c);

// Hand-computed bigram-overlap examples and range properties.
CheckResult check_rouge_examples();

// quick = smaller instance counts for the CLI path; full = the pinned
// acceptance-scale parameters.
std::vector<CheckResult> run_validation_suite(bool quick, std::uint64_t seed = 17);

}  // namespace subsparse
