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

#include "subsparse/maximize.hpp"
#include "subsparse/rng.hpp"
#include "subsparse/validation.hpp"

using namespace subsparse;

namespace {

// a=(4,0), b=(0,4), c=(1,1) over two features.
Objective three_element_sqrt() {
  FeatureMatrix m;
  m.n_elements = 3;
  m.n_features = 2;
  m.entries = {{0, 0, 4.0}, {1, 1, 4.0}, {2, 0, 1.0}, {2, 1, 1.0}};
  return Objective::feature_sqrt(std::move(m));
}

std::vector<int> iota_ground(int n) {
  std::vector<int> g(static_cast<std::size_t>(n));
  std::iota(g.begin(), g.end(), 0);
  return g;
}

}  // namespace

TEST_CASE("greedy picks the two orthogonal heavy elements") {
  const Objective obj = three_element_sqrt();
  const Solution s = greedy(obj, iota_ground(3), 2);
  CHECK(s.selected == std::vector<int>{0, 1});
  CHECK(s.value == doctest::Approx(4.0).epsilon(1e-12));
  const Solution b = brute_force_max(obj, iota_ground(3), 2);
  CHECK(b.value == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(b.selected == std::vector<int>{0, 1});
}

TEST_CASE("greedy edge budgets") {
  const Objective obj = three_element_sqrt();
  const Solution empty = greedy(obj, iota_ground(3), 0);
  CHECK(empty.selected.empty());
  CHECK(empty.value == 0.0);
  const Solution all = greedy(obj, iota_ground(3), 3);
  CHECK(all.value == doctest::Approx(obj.eval(iota_ground(3))).epsilon(1e-12));
}

TEST_CASE("solution bookkeeping: step gains sum to value and are nonincreasing") {
  Rng rng(29);
  const Objective obj = random_feature_sqrt_objective(rng, 30, 20, 3);
  const Solution s = greedy(obj, iota_ground(30), 10);
  double sum = 0.0;
  for (std::size_t i = 0; i < s.step_gains.size(); ++i) {
    sum += s.step_gains[i];
    if (i > 0) CHECK(s.step_gains[i] <= s.step_gains[i - 1] + 1e-9);
  }
  CHECK(sum == doctest::Approx(s.value).epsilon(1e-6));
  CHECK(s.value == doctest::Approx(obj.eval(s.selected)).epsilon(1e-9));
  CHECK(static_cast<int>(s.selected.size()) <= 10);
}

TEST_CASE("lazy greedy equals eager greedy with fewer evaluations") {
  Rng rng(31);
  for (int t = 0; t < 30; ++t) {
    const int n = 8 + static_cast<int>(rng.next_below(60));
    const Objective obj = random_feature_sqrt_objective(rng, n, std::max(4, n / 2), 3);
    const int k = std::max(1, n / 5);
    const Solution eager = greedy(obj, iota_ground(n), k);
    const Solution lazy = lazy_greedy(obj, iota_ground(n), k);
    CHECK(eager.selected == lazy.selected);
    CHECK(eager.value == doctest::Approx(lazy.value).epsilon(1e-12));
    CHECK(lazy.evals_used <= eager.evals_used);
  }
}

TEST_CASE("lazy greedy on a modular instance never re-evaluates") {
  // Feature-disjoint rows make every gain constant.
  FeatureMatrix m;
  m.n_elements = 12;
  m.n_features = 12;
  for (int v = 0; v < 12; ++v) m.entries.push_back({v, v, 1.0 + v});
  const Objective obj = Objective::feature_sqrt(std::move(m));
  const Solution lazy = lazy_greedy(obj, iota_ground(12), 5);
  CHECK(lazy.evals_used == 12);  // the initial pass only
  const Solution eager = greedy(obj, iota_ground(12), 5);
  CHECK(lazy.selected == eager.selected);
}

TEST_CASE("greedy ratio against brute force") {
  const CheckResult r = check_greedy_ratio(41, 60, 10, 3);
  INFO(r.detail);
  CHECK(r.passed);
}

TEST_CASE("brute force oracle basics") {
  const Objective obj = three_element_sqrt();
  CHECK(brute_force_max(obj, iota_ground(3), 1).selected == std::vector<int>{0});
  // Modular: top-k by singleton value.
  std::vector<double> table(16, 0.0);
  const double w[4] = {3.0, 1.0, 4.0, 2.0};
  for (std::uint32_t mask = 0; mask < 16; ++mask) {
    for (int v = 0; v < 4; ++v) {
      if (mask & (1u << v)) table[mask] += w[v];
    }
  }
  const Objective mod = Objective::explicit_table(4, std::move(table));
  const Solution s = brute_force_max(mod, iota_ground(4), 2);
  std::vector<int> sel = s.selected;
  std::sort(sel.begin(), sel.end());
  CHECK(sel == std::vector<int>{0, 2});
  CHECK(s.value == doctest::Approx(7.0).epsilon(1e-12));
  CHECK_THROWS_AS(brute_force_max(mod, iota_ground(25), 2), std::invalid_argument);
}

TEST_CASE("sieve streaming guarantee and duplicates") {
  const CheckResult r = check_sieve_guarantee(43, 60, 8, 3);
  INFO(r.detail);
  CHECK(r.passed);

  FeatureMatrix m;
  m.n_elements = 6;
  m.n_features = 2;
  for (int v = 0; v < 6; ++v) {
    m.entries.push_back({v, 0, 2.0});
    m.entries.push_back({v, 1, 3.0});
  }
  const Objective dup = Objective::feature_sqrt(std::move(m));
  // A stream repeating one element never re-adds it.
  const std::vector<int> repeated = {0, 0, 0, 0, 0};
  const Solution s = sieve_streaming(dup, repeated, 3, SieveConfig{});
  CHECK(s.value == doctest::Approx(dup.eval(std::vector<int>{0})).epsilon(1e-9));

  const Solution empty = sieve_streaming(dup, {}, 3, SieveConfig{});
  CHECK(empty.selected.empty());
  CHECK(empty.value == 0.0);
}

TEST_CASE("double greedy on a mixed-sign modular table keeps the positive elements") {
  // f(S) = sum of per-element weights {2, -1, 3, -2}.
  std::vector<double> table(16, 0.0);
  const double w[4] = {2.0, -1.0, 3.0, -2.0};
  for (std::uint32_t mask = 0; mask < 16; ++mask) {
    for (int v = 0; v < 4; ++v) {
      if (mask & (1u << v)) table[mask] += w[v];
    }
  }
  const Objective mod = Objective::explicit_table(4, std::move(table), false);
  for (DoubleGreedyMode mode : {DoubleGreedyMode::deterministic, DoubleGreedyMode::randomized}) {
    std::vector<int> x = double_greedy(mod, iota_ground(4), mode, 9);
    std::sort(x.begin(), x.end());
    CHECK(x == std::vector<int>{0, 2});
  }
}

TEST_CASE("double greedy approximation bounds on the pruning objective") {
  const CheckResult r = check_double_greedy_bounds(47, 6, 6, 200);
  INFO(r.detail);
  CHECK(r.passed);
}

TEST_CASE("all maximizers are deterministic for a fixed instance and seed") {
  Rng rng(53);
  const Objective obj = random_feature_sqrt_objective(rng, 40, 20, 3);
  const Solution a = lazy_greedy(obj, iota_ground(40), 8);
  const Solution b = lazy_greedy(obj, iota_ground(40), 8);
  CHECK(a.selected == b.selected);
  CHECK(a.value == b.value);
  const Solution sa = sieve_streaming(obj, iota_ground(40), 8, SieveConfig{});
  const Solution sb = sieve_streaming(obj, iota_ground(40), 8, SieveConfig{});
  CHECK(sa.selected == sb.selected);
}
