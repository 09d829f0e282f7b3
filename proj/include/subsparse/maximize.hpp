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
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "subsparse/objective.hpp"

namespace subsparse {

struct Solution {
  std::vector<int> selected;       // in selection order
  double value = 0.0;
  std::vector<double> step_gains;  // one per selection
  std::string algorithm;
  int k = 0;
  double wall_time_s = 0.0;
  std::uint64_t evals_used = 0;
};

struct SieveConfig {
  int n_thresholds = 50;
};

// Cardinality-constrained greedy; ties broken by smallest element id.
// Stops early when the best remaining gain is <= 0.
Solution greedy(const Objective& objective, std::span<const int> ground, int k);

// Priority-queue accelerated greedy. Identical selected sequence and value
// to greedy; never uses more gain evaluations.
Solution lazy_greedy(const Objective& objective, std::span<const int> ground, int k);

// One-pass threshold-sieve maximization over a geometric grid of guesses
// covering [m, 2km], m the running max singleton value. Holds at most
// n_thresholds x k element ids; peak_retained_ids reports the high-water
// mark when non-null.
Solution sieve_streaming(const Objective& objective, std::span<const int> stream, int k,
                         const SieveConfig& cfg, std::uint64_t* peak_retained_ids = nullptr);

// Exact optimum over all subsets of size <= k; |ground| <= 20. Ties broken
// by lexicographic subset order.
Solution brute_force_max(const Objective& objective, std::span<const int> ground, int k);

enum class DoubleGreedyMode { deterministic, randomized };

// Incremental oracle for unconstrained maximization: X grows from empty,
// Y shrinks from the full ground set.
class UnconstrainedOracle {
 public:
  virtual ~UnconstrainedOracle() = default;
  virtual double add_gain(int u) = 0;     // f(X + u) - f(X)
  virtual double remove_gain(int u) = 0;  // f(Y - u) - f(Y)
  virtual void commit_add(int u) = 0;
  virtual void commit_remove(int u) = 0;
};

// Scratch-evaluation oracle over an arbitrary set function (bitmask domain,
// ground size <= 32).
class SetFunctionOracle : public UnconstrainedOracle {
 public:
  SetFunctionOracle(std::function<double(const std::vector<int>&)> f,
                    std::span<const int> ground);
  double add_gain(int u) override;
  double remove_gain(int u) override;
  void commit_add(int u) override;
  void commit_remove(int u) override;

 private:
  std::function<double(const std::vector<int>&)> f_;
  std::vector<int> x_, y_;
};

// One-pass double greedy for unconstrained (possibly non-monotone)
// submodular maximization. Deterministic mode is the 1/3-approximation
// variant; randomized mode the 1/2-in-expectation variant.
std::vector<int> double_greedy(UnconstrainedOracle& oracle, std::span<const int> ground,
                               DoubleGreedyMode mode, std::uint64_t seed = 0);

// Convenience wrapper evaluating the objective from scratch.
std::vector<int> double_greedy(const Objective& objective, std::span<const int> ground,
                               DoubleGreedyMode mode, std::uint64_t seed = 0);

}  // namespace subsparse
