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
#include <numeric>
#include <vector>

#include <doctest.h>

#include "subsparse/objective.hpp"
#include "subsparse/rng.hpp"
#include "subsparse/validation.hpp"

using namespace subsparse;

namespace {

// Single feature, weights a=4 and b=5.
Objective two_element_sqrt() {
  FeatureMatrix m;
  m.n_elements = 2;
  m.n_features = 1;
  m.entries = {{0, 0, 4.0}, {1, 0, 5.0}};
  return Objective::feature_sqrt(std::move(m));
}

}  // namespace

TEST_CASE("feature_sqrt closed forms") {
  const Objective obj = two_element_sqrt();
  CHECK(obj.eval({}) == 0.0);
  const std::vector<int> both = {0, 1};
  CHECK(obj.eval(both) == doctest::Approx(3.0).epsilon(1e-12));
  const std::vector<int> a = {0};
  CHECK(obj.marginal_gain(1, a) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(obj.marginal_gain(1, {}) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));
}

TEST_CASE("facility_location closed form") {
  SimilarityMatrix m;
  m.n_elements = 2;
  m.sim = {1.0, 0.5, 0.5, 1.0};
  const Objective obj = Objective::facility_location(std::move(m));
  const std::vector<int> s = {0};
  CHECK(obj.eval(s) == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(obj.eval({}) == 0.0);
  CHECK(obj.marginal_gain(1, s) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("marginal gain equals scratch evaluation difference") {
  Rng rng(11);
  const Objective obj = random_feature_sqrt_objective(rng, 8, 6, 3);
  for (int t = 0; t < 200; ++t) {
    std::vector<int> s;
    for (int i = 0; i < 8; ++i) {
      if (rng.next_u64() & 1) s.push_back(i);
    }
    const int v = static_cast<int>(rng.next_below(8));
    if (std::find(s.begin(), s.end(), v) != s.end()) continue;
    std::vector<int> sv = s;
    sv.push_back(v);
    CHECK(obj.marginal_gain(v, s) ==
          doctest::Approx(obj.eval(sv) - obj.eval(s)).epsilon(1e-12));
  }
}

TEST_CASE("gain context matches scratch differences and greedy step gains") {
  Rng rng(23);
  for (int variant = 0; variant < 2; ++variant) {
    const Objective obj = random_feature_sqrt_objective(rng, 10, 8, 3);
    GainContext ctx = obj.context();
    CHECK(ctx.gain(3) == doctest::Approx(obj.eval(std::vector<int>{3})).epsilon(1e-12));
    std::vector<int> cur;
    std::vector<int> order(10);
    std::iota(order.begin(), order.end(), 0);
    order = rng.sample_without_replacement(order, order.size());
    for (int v : order) {
      CHECK(ctx.gain(v) == doctest::Approx(obj.marginal_gain(v, cur)).epsilon(1e-9));
      ctx.commit(v);
      cur.push_back(v);
    }
    // After committing everything, the running value equals the column-sum
    // closed form.
    const FeatureMatrix* m = obj.feature_data();
    std::vector<double> colsum(static_cast<std::size_t>(m->n_features), 0.0);
    for (const auto& e : m->entries) colsum[static_cast<std::size_t>(e.feature)] += e.weight;
    double expect = 0.0;
    for (double c : colsum) expect += std::sqrt(c);
    CHECK(ctx.value() == doctest::Approx(expect).epsilon(1e-12));
    CHECK_THROWS_AS(ctx.commit(order.front()), std::invalid_argument);
  }
}

TEST_CASE("diminishing returns and monotonicity hold on sampled triples") {
  const CheckResult r = check_objective_properties(7, 5, 10);
  INFO(r.detail);
  CHECK(r.passed);
}

TEST_CASE("explicit_table accepts modular and coverage tables") {
  // f(S) = |S| over 3 elements.
  std::vector<double> modular = {0, 1, 1, 2, 1, 2, 2, 3};
  CHECK_NOTHROW(Objective::explicit_table(3, modular));
  Rng rng(3);
  CHECK_NOTHROW(random_coverage_table_objective(rng, 6));
}

TEST_CASE("explicit_table rejects supermodular and unnormalized tables") {
  // f(a)=f(b)=0 but f(ab)=1 violates diminishing returns.
  std::vector<double> super = {0, 0, 0, 1};
  CHECK_THROWS_AS(Objective::explicit_table(2, super), std::invalid_argument);
  std::vector<double> unnormalized = {1, 2, 2, 3};
  CHECK_THROWS_AS(Objective::explicit_table(2, unnormalized), std::invalid_argument);
  std::vector<double> negative = {0, -1, 1, 0};
  CHECK_THROWS_AS(Objective::explicit_table(2, negative), std::invalid_argument);
}

TEST_CASE("feature matrix invariants enforced") {
  FeatureMatrix m;
  m.n_elements = 2;
  m.n_features = 1;
  m.entries = {{0, 0, -1.0}};
  CHECK_THROWS_AS(m.validate(), std::invalid_argument);
  m.entries = {{0, 0, 1.0}, {0, 0, 2.0}};
  CHECK_THROWS_AS(m.validate(), std::invalid_argument);
  m.entries = {{2, 0, 1.0}};
  CHECK_THROWS_AS(m.validate(), std::invalid_argument);
  m.entries = {{0, 0, 1.0}, {1, 0, 2.0}};
  CHECK_NOTHROW(m.validate());
}

TEST_CASE("similarity matrix requires maximal self-similarity") {
  SimilarityMatrix m;
  m.n_elements = 2;
  m.sim = {0.2, 0.5, 0.5, 1.0};  // sim[0][1] > sim[0][0]
  CHECK_THROWS_AS(m.validate(), std::invalid_argument);
  m.sim = {1.0, 0.5, -0.1, 1.0};
  CHECK_THROWS_AS(m.validate(), std::invalid_argument);
}

TEST_CASE("invalid ids are rejected") {
  const Objective obj = two_element_sqrt();
  CHECK_THROWS_AS(obj.eval(std::vector<int>{5}), std::invalid_argument);
  const std::vector<int> s = {0};
  CHECK_THROWS_AS(obj.marginal_gain(0, s), std::invalid_argument);  // v already in S
}
