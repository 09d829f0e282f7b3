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
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "subsparse/feature_matrix.hpp"

namespace subsparse {

enum class ObjectiveKind { feature_sqrt, facility_location, explicit_table };

class GainContext;

// Immutable normalized submodular set function. Safe for concurrent reads;
// copies share the backing data.
class Objective {
 public:
  // f(S) = sum over features of sqrt(sum of member weights).
  static Objective feature_sqrt(FeatureMatrix m);

  // f(S) = sum over elements of max similarity to a member of S.
  static Objective facility_location(SimilarityMatrix m);

  // Exhaustive value table indexed by subset bitmask (size 1 << n, n <= 20).
  // Construction verifies normalization and submodularity, and nonnegativity
  // unless require_nonnegative is false (test-only escape hatch for
  // mixed-sign modular tables). Throws std::invalid_argument naming a
  // violating (A, B, v) triple.
  static Objective explicit_table(int n, std::vector<double> table,
                                  bool require_nonnegative = true);

  ObjectiveKind kind() const;
  int n_elements() const;

  double eval(std::span<const int> s) const;

  // f(S + v) - f(S). Throws if v is already in S.
  double marginal_gain(int v, std::span<const int> s) const;

  GainContext context(std::span<const int> s = {}) const;

  // Non-null only for the corresponding kind.
  const FeatureMatrix* feature_data() const;
  const SimilarityMatrix* similarity_data() const;

  // Elements carrying feature f, paired with their weight (feature_sqrt only).
  std::span<const std::pair<int, double>> feature_postings(int f) const;
  // Sparse row of element v as (feature, weight) pairs (feature_sqrt only).
  std::span<const std::pair<int, double>> feature_row(int v) const;

 private:
  struct Impl;
  explicit Objective(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;
  friend class GainContext;
};

// Single-owner incremental marginal-gain state over a growing set.
// gain(v) matches the scratch difference eval(S+v) - eval(S); commits are
// amortized in the element's nonzero count (feature_sqrt) or n (facility).
class GainContext {
 public:
  double gain(int v) const;   // counts as one objective evaluation
  void commit(int v);         // throws if v already present

  bool contains(int v) const { return in_set_[static_cast<std::size_t>(v)] != 0; }
  const std::vector<int>& current() const { return current_; }
  double value() const { return value_; }
  std::uint64_t evals() const { return evals_; }

  // True when invalidation after a commit can be limited to affected_by().
  bool local_invalidation() const;
  // Elements whose gain may change when v is committed (feature_sqrt:
  // co-occurring elements via feature postings). Only valid when
  // local_invalidation() is true.
  void affected_by(int v, std::vector<int>* out) const;

 private:
  friend class Objective;
  GainContext(std::shared_ptr<const Objective::Impl> impl, std::span<const int> s);
  double gain_impl(int v) const;

  std::shared_ptr<const Objective::Impl> impl_;
  std::vector<char> in_set_;
  std::vector<int> current_;
  double value_ = 0.0;
  mutable std::uint64_t evals_ = 0;

  std::vector<double> feature_sums_;  // feature_sqrt: running c_u(S)
  std::vector<double> cur_max_;       // facility_location: per-element max
  std::uint32_t mask_ = 0;            // explicit_table
};

}  // namespace subsparse
