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

#include <string>
#include <vector>

namespace subsparse {

// Sparse nonnegative element-by-feature affinities backing the
// square-root coverage objective.
struct FeatureMatrix {
  struct Entry {
    int element = 0;
    int feature = 0;
    double weight = 0.0;
  };

  int n_elements = 0;
  int n_features = 0;
  std::vector<Entry> entries;

  // Throws std::invalid_argument on negative weights, out-of-range ids or
  // duplicate (element, feature) pairs.
  void validate() const;
};

// Dense pairwise similarities for the facility-location objective.
// Self-similarity must be row-maximal.
struct SimilarityMatrix {
  int n_elements = 0;
  std::vector<double> sim;  // row-major n x n

  double at(int i, int j) const { return sim[static_cast<std::size_t>(i) * n_elements + j]; }

  void validate() const;
};

}  // namespace subsparse
