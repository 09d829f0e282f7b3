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

#include "subsparse/feature_matrix.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace subsparse {

void FeatureMatrix::validate() const {
  if (n_elements < 0 || n_features < 0) {
    throw std::invalid_argument("FeatureMatrix: negative dimensions");
  }
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(entries.size());
  for (const Entry& e : entries) {
    if (e.element < 0 || e.element >= n_elements) {
      throw std::invalid_argument("FeatureMatrix: element id " + std::to_string(e.element) +
                                  " out of range");
    }
    if (e.feature < 0 || e.feature >= n_features) {
      throw std::invalid_argument("FeatureMatrix: feature id " + std::to_string(e.feature) +
                                  " out of range");
    }
    if (!(e.weight >= 0.0)) {
      throw std::invalid_argument("FeatureMatrix: negative weight at element " +
                                  std::to_string(e.element) + ", feature " +
                                  std::to_string(e.feature));
    }
    const std::uint64_t key =
        (static_cast<std::uint64_t>(e.element) << 32) | static_cast<std::uint32_t>(e.feature);
    if (!seen.insert(key).second) {
      throw std::invalid_argument("FeatureMatrix: duplicate (element, feature) pair (" +
                                  std::to_string(e.element) + ", " + std::to_string(e.feature) +
                                  ")");
    }
  }
}

void SimilarityMatrix::validate() const {
  if (n_elements < 0) throw std::invalid_argument("SimilarityMatrix: negative size");
  if (sim.size() != static_cast<std::size_t>(n_elements) * n_elements) {
    throw std::invalid_argument("SimilarityMatrix: size mismatch");
  }
  for (int i = 0; i < n_elements; ++i) {
    for (int j = 0; j < n_elements; ++j) {
      if (!(at(i, j) >= 0.0)) {
        throw std::invalid_argument("SimilarityMatrix: negative entry at (" + std::to_string(i) +
                                    ", " + std::to_string(j) + ")");
      }
      if (at(i, i) < at(i, j)) {
        throw std::invalid_argument("SimilarityMatrix: self-similarity not maximal in row " +
                                    std::to_string(i));
      }
    }
  }
}

}  // namespace subsparse
