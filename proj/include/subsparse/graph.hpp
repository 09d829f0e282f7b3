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
#include <span>
#include <utility>
#include <vector>

#include "subsparse/objective.hpp"

namespace subsparse {

// Per-element gains against everything else, g[u] = f(u | V \ u), computed
// once against a fixed reference ground set.
struct GlobalGains {
  std::vector<double> g;           // indexed by element id; valid on reference ids
  std::vector<int> reference;      // sorted reference ground set
};

GlobalGains compute_global_gains(const Objective& objective, std::span<const int> ground);

// Directed edge weights w(u, v) = f(v | u) - f(u | V \ u) over a reference
// ground set. Edges are computed on demand; the n x n table is never
// materialized.
class GraphWeights {
 public:
  GraphWeights(Objective objective, GlobalGains globals);

  const Objective& objective() const { return objective_; }
  const GlobalGains& globals() const { return globals_; }
  double singleton(int u) const { return singleton_[static_cast<std::size_t>(u)]; }

  // w(u, u) = -g[u] <= 0.
  double edge_weight(int u, int v) const;

  // w(u, v | S) = f(v | S + u) - g[u]; reduces to edge_weight when S is
  // empty. Throws if u or v is in S.
  double conditional_edge_weight(int u, int v, std::span<const int> s) const;

  // min over x in U of w(x, v). Throws on empty U.
  double divergence(std::span<const int> u_set, int v) const;

  // Divergence of every v in rest from u_set; requires u_set and rest
  // disjoint. Specialized to run in time near-linear in the co-occurring
  // (probe, element) pairs for feature_sqrt objectives.
  std::vector<double> divergence_all(std::span<const int> u_set,
                                     std::span<const int> rest) const;

 private:
  Objective objective_;
  GlobalGains globals_;
  std::vector<double> singleton_;
};

// Parameters of the pruning objective h(V') = |{v in V \ V' : w(V', v) <= eps}|.
struct SparsificationInstance {
  double epsilon = 0.0;
  const GraphWeights* weights = nullptr;
  std::vector<int> ground;  // sorted
};

// Direct-definition evaluation of h. h(empty) = 0.
int h_value(const SparsificationInstance& inst, std::span<const int> vprime);

// Exhaustive argmax of h over all subsets (|ground| <= 12). Ties broken by
// smaller subset size, then lexicographic id order. Returns (V*, K = |V*|).
std::pair<std::vector<int>, int> exact_sparsifier_optimum(const SparsificationInstance& inst);

}  // namespace subsparse
