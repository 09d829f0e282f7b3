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

#include "subsparse/validation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <sstream>

#include "subsparse/data_io.hpp"
#include "subsparse/evaluate.hpp"
#include "subsparse/graph.hpp"
#include "subsparse/maximize.hpp"
#include "subsparse/sparsify.hpp"

namespace subsparse {

namespace {

constexpr double kTol = 1e-9;

std::vector<int> mask_to_set(std::uint32_t mask) {
  std::vector<int> out;
  for (int i = 0; mask; ++i, mask >>= 1) {
    if (mask & 1) out.push_back(i);
  }
  return out;
}

std::uint32_t random_mask(Rng& rng, int n) {
  return static_cast<std::uint32_t>(rng.next_u64()) &
         ((n >= 32 ? ~0u : (1u << n) - 1u));
}

// Random subset of {0..n-1} excluding the listed ids; each id kept with
// probability 1/2.
std::vector<int> random_subset_excluding(Rng& rng, int n, std::initializer_list<int> excl) {
  std::vector<int> out;
  for (int i = 0; i < n; ++i) {
    if (std::find(excl.begin(), excl.end(), i) != excl.end()) continue;
    if (rng.next_u64() & 1) out.push_back(i);
  }
  return out;
}

SimilarityMatrix random_similarity(Rng& rng, int n) {
  SimilarityMatrix m;
  m.n_elements = n;
  m.sim.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      m.sim[static_cast<std::size_t>(i) * n + j] = i == j ? 1.0 : 0.9 * rng.unit();
    }
  }
  return m;
}

// Edge-weight grid values at the 0/25/50/75/100 percent ranks of all
// off-diagonal weights.
std::vector<double> epsilon_grid(const GraphWeights& w, int n) {
  std::vector<double> all;
  all.reserve(static_cast<std::size_t>(n) * n);
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (u != v) all.push_back(w.edge_weight(u, v));
    }
  }
  std::sort(all.begin(), all.end());
  std::vector<double> grid;
  for (double q : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    grid.push_back(all[static_cast<std::size_t>(q * (all.size() - 1))]);
  }
  return grid;
}

std::string fmt_detail(long long checked, double worst_margin) {
  std::ostringstream ss;
  ss << checked << " checks, worst margin " << worst_margin;
  return ss.str();
}

struct GraphInstance {
  Objective objective;
  GlobalGains globals;
  GraphWeights weights;
  std::vector<int> ground;
};

GraphInstance make_graph_instance(Rng& rng, int n) {
  Objective obj = random_feature_sqrt_objective(rng, n, n, 3);
  std::vector<int> ground(static_cast<std::size_t>(n));
  std::iota(ground.begin(), ground.end(), 0);
  GlobalGains globals = compute_global_gains(obj, ground);
  GraphWeights weights(obj, globals);
  return {std::move(obj), std::move(globals), std::move(weights), std::move(ground)};
}

}  // namespace

Objective random_feature_sqrt_objective(Rng& rng, int n, int n_features, int nnz) {
  FeatureMatrix m;
  m.n_elements = n;
  m.n_features = n_features;
  std::vector<int> features(static_cast<std::size_t>(n_features));
  std::iota(features.begin(), features.end(), 0);
  for (int v = 0; v < n; ++v) {
    const int cnt = std::min(nnz, n_features);
    std::vector<int> picked =
        rng.sample_without_replacement(features, static_cast<std::size_t>(cnt));
    std::sort(picked.begin(), picked.end());
    for (int f : picked) {
      m.entries.push_back({v, f, 0.1 + 2.0 * rng.unit()});
    }
  }
  return Objective::feature_sqrt(std::move(m));
}

Objective random_coverage_table_objective(Rng& rng, int n) {
  // Each element covers a random subset of a 2n-point weighted universe.
  const int universe = 2 * n;
  std::vector<double> point_weight(static_cast<std::size_t>(universe));
  for (double& w : point_weight) w = 0.1 + rng.unit();
  std::vector<std::uint64_t> covers(static_cast<std::size_t>(n), 0);
  for (auto& c : covers) {
    for (int p = 0; p < universe; ++p) {
      if (rng.unit() < 0.3) c |= std::uint64_t{1} << p;
    }
  }
  std::vector<double> table(std::size_t{1} << n, 0.0);
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::uint64_t u = 0;
    for (int v = 0; v < n; ++v) {
      if (mask & (1u << v)) u |= covers[static_cast<std::size_t>(v)];
    }
    double val = 0.0;
    for (int p = 0; p < universe; ++p) {
      if (u & (std::uint64_t{1} << p)) val += point_weight[static_cast<std::size_t>(p)];
    }
    table[mask] = val;
  }
  return Objective::explicit_table(n, std::move(table));
}

CheckResult check_objective_properties(std::uint64_t seed, int instances, int n) {
  Rng rng(seed);
  long long checked = 0;
  double worst = 1e18;
  for (int inst = 0; inst < instances; ++inst) {
    for (int variant = 0; variant < 2; ++variant) {
      const Objective obj = variant == 0
                                ? random_feature_sqrt_objective(rng, n, n, 3)
                                : Objective::facility_location(random_similarity(rng, n));
      if (obj.eval({}) != 0.0) {
        return {"objective-properties", false, "eval(empty) != 0"};
      }
      // Diminishing returns and monotonicity on sampled (A subset B, v).
      for (int t = 0; t < 200; ++t) {
        const std::uint32_t b_mask = random_mask(rng, n);
        const std::uint32_t a_mask = b_mask & random_mask(rng, n);
        const std::vector<int> b = mask_to_set(b_mask);
        if (static_cast<int>(b.size()) == n) continue;
        int v = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
        while (b_mask & (1u << v)) v = (v + 1) % n;
        const std::vector<int> a = mask_to_set(a_mask);
        const double ga = obj.marginal_gain(v, a);
        const double gb = obj.marginal_gain(v, b);
        worst = std::min(worst, ga - gb);
        if (ga < gb - kTol) {
          return {"objective-properties", false, "diminishing returns violated"};
        }
        if (gb < -1e-12) {
          return {"objective-properties", false, "monotonicity violated"};
        }
        ++checked;
      }
      // Incremental context equals scratch differences along a random order.
      GainContext ctx = obj.context();
      std::vector<int> order(static_cast<std::size_t>(n));
      std::iota(order.begin(), order.end(), 0);
      order = rng.sample_without_replacement(order, order.size());
      std::vector<int> cur;
      for (int v : order) {
        const double scratch = obj.marginal_gain(v, cur);
        if (std::fabs(ctx.gain(v) - scratch) > kTol) {
          return {"objective-properties", false, "gain context drifted from scratch"};
        }
        ctx.commit(v);
        cur.push_back(v);
        ++checked;
      }
      if (std::fabs(ctx.value() - obj.eval(cur)) > kTol) {
        return {"objective-properties", false, "context value != eval"};
      }
    }
  }
  return {"objective-properties", true, fmt_detail(checked, worst)};
}

CheckResult check_lemma1(std::uint64_t seed, int samples, int n) {
  Rng rng(seed);
  GraphInstance gi = make_graph_instance(rng, n);
  long long checked = 0;
  double worst = 1e18;
  while (checked < samples) {
    const int u = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
    int v = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
    if (u == v) continue;
    const std::vector<int> s = random_subset_excluding(rng, n, {u, v});
    std::vector<int> p;
    for (int x : s) {
      if (rng.next_u64() & 1) p.push_back(x);
    }
    const double ws = gi.weights.conditional_edge_weight(u, v, s);
    const double wp = gi.weights.conditional_edge_weight(u, v, p);
    worst = std::min(worst, wp - ws);
    if (ws > wp + kTol) {
      return {"lemma1-conditioning", false, "w(u,v|S) > w(u,v|P) for P subset S"};
    }
    ++checked;
  }
  return {"lemma1-conditioning", true, fmt_detail(checked, worst)};
}

CheckResult check_lemma2(std::uint64_t seed, int samples, int n) {
  Rng rng(seed);
  GraphInstance gi = make_graph_instance(rng, n);
  long long checked = 0;
  double worst = 1e18;
  while (checked < samples) {
    const int u = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
    int v = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
    if (u == v) continue;
    const std::vector<int> s = random_subset_excluding(rng, n, {u, v});
    const double fv = gi.objective.marginal_gain(v, s);
    const double fu = gi.objective.marginal_gain(u, s);
    const double w = gi.weights.conditional_edge_weight(u, v, s);
    worst = std::min(worst, fu + w - fv);
    if (fv > fu + w + kTol) {
      return {"lemma2-gain-bound", false, "f(v|S) > f(u|S) + w(u,v|S)"};
    }
    ++checked;
  }
  return {"lemma2-gain-bound", true, fmt_detail(checked, worst)};
}

CheckResult check_lemma3(std::uint64_t seed, int instances, int n) {
  Rng rng(seed);
  long long checked = 0;
  double worst = 1e18;
  for (int inst = 0; inst < instances; ++inst) {
    GraphInstance gi = make_graph_instance(rng, n);
    // Dense local block so the triple scan is O(n^3) lookups.
    std::vector<double> w(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        w[static_cast<std::size_t>(a) * n + b] = gi.weights.edge_weight(a, b);
      }
    }
    const auto at = [&](int a, int b) { return w[static_cast<std::size_t>(a) * n + b]; };
    for (int v = 0; v < n; ++v) {
      for (int u = 0; u < n; ++u) {
        if (u == v) continue;
        for (int x = 0; x < n; ++x) {
          if (x == v || x == u) continue;
          worst = std::min(worst, at(v, u) + at(u, x) - at(v, x));
          if (at(v, x) > at(v, u) + at(u, x) + kTol) {
            return {"lemma3-triangle", false, "directed triangle inequality violated"};
          }
          ++checked;
        }
      }
    }
  }
  return {"lemma3-triangle", true, fmt_detail(checked, worst)};
}

CheckResult check_pruning_price(std::uint64_t seed, int samples, int n) {
  Rng rng(seed);
  GraphInstance gi = make_graph_instance(rng, n);
  long long checked = 0;
  double worst = 1e18;
  while (checked < samples) {
    const std::uint32_t vp_mask = random_mask(rng, n);
    std::vector<int> vprime = mask_to_set(vp_mask);
    if (vprime.empty() || static_cast<int>(vprime.size()) == n) continue;
    int v = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
    while (vp_mask & (1u << v)) v = (v + 1) % n;
    std::vector<int> s;
    for (int i = 0; i < n; ++i) {
      if (i != v && !(vp_mask & (1u << i)) && (rng.next_u64() & 1)) s.push_back(i);
    }
    double best_gain = -1e18;
    for (int x : vprime) best_gain = std::max(best_gain, gi.objective.marginal_gain(x, s));
    double div = 1e18;
    for (int x : vprime) {
      div = std::min(div, gi.weights.conditional_edge_weight(x, v, s));
    }
    const double fv = gi.objective.marginal_gain(v, s);
    worst = std::min(worst, best_gain - (fv - div));
    if (best_gain < fv - div - kTol) {
      return {"pruning-price", false, "retained best gain below pruned bound"};
    }
    ++checked;
  }
  return {"pruning-price", true, fmt_detail(checked, worst)};
}

CheckResult check_h_properties(std::uint64_t seed, int instances, int n) {
  Rng rng(seed);
  long long checked = 0;
  for (int inst = 0; inst < instances; ++inst) {
    GraphInstance gi = make_graph_instance(rng, n);
    const std::vector<double> grid = epsilon_grid(gi.weights, n);
    const std::uint32_t full = (1u << n) - 1u;
    std::vector<std::vector<int>> h_by_eps;
    for (double eps : grid) {
      SparsificationInstance si{eps, &gi.weights, gi.ground};
      std::vector<int> h(std::size_t{1} << n, 0);
      for (std::uint32_t mask = 0; mask <= full; ++mask) {
        h[mask] = h_value(si, mask_to_set(mask));
        if (h[mask] < 0) return {"h-properties", false, "negative h"};
      }
      if (h[0] != 0 || h[full] != 0) {
        return {"h-properties", false, "h(empty) or h(V) nonzero"};
      }
      // Set-cover reformulation: |union of A_u| - |V'|.
      for (std::uint32_t mask = 1; mask <= full; ++mask) {
        std::uint32_t cover = mask;
        for (int u = 0; u < n; ++u) {
          if (!(mask & (1u << u))) continue;
          for (int v = 0; v < n; ++v) {
            if (gi.weights.edge_weight(u, v) <= eps) cover |= 1u << v;
          }
        }
        const int sc = std::popcount(cover) - std::popcount(mask);
        if (sc != h[mask]) return {"h-properties", false, "set-cover formula disagrees"};
        ++checked;
      }
      // Exhaustive diminishing-returns triples (A subset of B, v outside B).
      for (std::uint32_t b = 0; b <= full; ++b) {
        for (std::uint32_t a = b;; a = (a - 1) & b) {
          for (int v = 0; v < n; ++v) {
            if (b & (1u << v)) continue;
            const std::uint32_t vb = 1u << v;
            if (h[a | vb] - h[a] < h[b | vb] - h[b]) {
              return {"h-properties", false, "h not submodular"};
            }
            ++checked;
          }
          if (a == 0) break;
        }
      }
      h_by_eps.push_back(std::move(h));
    }
    // Monotone in epsilon at fixed V' (grid is sorted ascending).
    for (std::uint32_t mask = 0; mask <= full; ++mask) {
      for (std::size_t e = 1; e < h_by_eps.size(); ++e) {
        if (h_by_eps[e][mask] < h_by_eps[e - 1][mask]) {
          return {"h-properties", false, "h not monotone in epsilon"};
        }
        ++checked;
      }
    }
  }
  return {"h-properties", true, fmt_detail(checked, 0.0)};
}

CheckResult check_approximation_bound(std::uint64_t seed, int instances, int n, int k) {
  Rng rng(seed);
  long long checked = 0;
  double worst = 1e18;
  for (int inst = 0; inst < instances; ++inst) {
    GraphInstance gi = make_graph_instance(rng, n);
    const double opt = brute_force_max(gi.objective, gi.ground, k).value;
    for (double eps : epsilon_grid(gi.weights, n)) {
      SparsificationInstance si{eps, &gi.weights, gi.ground};
      const auto [vstar, bigk] = exact_sparsifier_optimum(si);
      if (bigk < k) continue;  // bound stated only for |V*| >= k
      const double val = greedy(gi.objective, vstar, k).value;
      const double bound = (1.0 - std::exp(-1.0)) * (opt - k * eps);
      worst = std::min(worst, val - bound);
      if (val < bound - kTol) {
        return {"approximation-bound", false, "greedy on V* below (1-1/e)(OPT - k eps)"};
      }
      ++checked;
    }
  }
  return {"approximation-bound", true, fmt_detail(checked, worst)};
}

CheckResult check_greedy_ratio(std::uint64_t seed, int instances, int n, int k) {
  Rng rng(seed);
  long long checked = 0;
  double worst = 1e18;
  const double ratio = 1.0 - std::exp(-1.0);
  for (int inst = 0; inst < instances; ++inst) {
    const int ni = 4 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n - 3)));
    const int ki = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(k)));
    const Objective obj = (inst % 2 == 0) ? random_feature_sqrt_objective(rng, ni, ni, 3)
                                          : random_coverage_table_objective(rng, ni);
    std::vector<int> ground(static_cast<std::size_t>(ni));
    std::iota(ground.begin(), ground.end(), 0);
    const double g = greedy(obj, ground, ki).value;
    const double b = brute_force_max(obj, ground, ki).value;
    worst = std::min(worst, g - ratio * b);
    if (g < ratio * b - kTol) {
      return {"greedy-ratio", false, "greedy below (1-1/e) of optimum"};
    }
    ++checked;
  }
  return {"greedy-ratio", true, fmt_detail(checked, worst)};
}

CheckResult check_lazy_equivalence(std::uint64_t seed, int instances, int n) {
  Rng rng(seed);
  int large = 0, large_fewer = 0;
  for (int inst = 0; inst < instances; ++inst) {
    const int ni = 8 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n - 7)));
    const Objective obj = random_feature_sqrt_objective(rng, ni, std::max(4, ni / 2), 3);
    std::vector<int> ground(static_cast<std::size_t>(ni));
    std::iota(ground.begin(), ground.end(), 0);
    const int k = std::max(1, ni / 5);
    const Solution eager = greedy(obj, ground, k);
    const Solution lazy = lazy_greedy(obj, ground, k);
    if (eager.selected != lazy.selected || std::fabs(eager.value - lazy.value) > kTol) {
      return {"lazy-equivalence", false, "lazy selection differs from eager"};
    }
    if (lazy.evals_used > eager.evals_used) {
      return {"lazy-equivalence", false, "lazy used more evaluations than eager"};
    }
    if (ni >= 50) {
      ++large;
      if (lazy.evals_used < eager.evals_used) ++large_fewer;
    }
  }
  if (large > 0 && large_fewer * 100 < large * 95) {
    return {"lazy-equivalence", false, "lazy rarely saves evaluations at n >= 50"};
  }
  std::ostringstream ss;
  ss << instances << " instances, " << large_fewer << "/" << large << " large saved evals";
  return {"lazy-equivalence", true, ss.str()};
}

CheckResult check_sieve_guarantee(std::uint64_t seed, int instances, int n, int k) {
  Rng rng(seed);
  long long checked = 0;
  double worst = 1e18;
  SieveConfig cfg;
  for (int inst = 0; inst < instances; ++inst) {
    const int ni = 4 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n - 3)));
    const int ki = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(k)));
    const Objective obj = random_feature_sqrt_objective(rng, ni, ni, 3);
    std::vector<int> ground(static_cast<std::size_t>(ni));
    std::iota(ground.begin(), ground.end(), 0);
    std::uint64_t peak = 0;
    const Solution s = sieve_streaming(obj, ground, ki, cfg, &peak);
    const double opt = brute_force_max(obj, ground, ki).value;
    worst = std::min(worst, s.value - 0.4 * opt);
    if (s.value < 0.4 * opt - kTol) {
      return {"sieve-guarantee", false, "sieve value below (1/2 - 0.1) of optimum"};
    }
    if (peak > static_cast<std::uint64_t>(cfg.n_thresholds) * ki) {
      return {"sieve-guarantee", false, "sieve retained more than thresholds x k ids"};
    }
    ++checked;
  }
  return {"sieve-guarantee", true, fmt_detail(checked, worst)};
}

CheckResult check_double_greedy_bounds(std::uint64_t seed, int instances, int n,
                                       int randomized_seeds) {
  Rng rng(seed);
  long long checked = 0;
  double worst = 1e18;
  for (int inst = 0; inst < instances; ++inst) {
    GraphInstance gi = make_graph_instance(rng, n);
    const std::vector<double> grid = epsilon_grid(gi.weights, n);
    SparsificationInstance si{grid[3], &gi.weights, gi.ground};
    double hmax = 0.0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      hmax = std::max(hmax, static_cast<double>(h_value(si, mask_to_set(mask))));
    }
    if (hmax == 0.0) continue;
    const auto h_of = [&](const std::vector<int>& s) {
      return static_cast<double>(h_value(si, s));
    };
    {
      SetFunctionOracle oracle(h_of, gi.ground);
      const std::vector<int> x =
          double_greedy(oracle, gi.ground, DoubleGreedyMode::deterministic);
      const double val = h_of(x);
      worst = std::min(worst, val - hmax / 3.0);
      if (val < hmax / 3.0 - kTol) {
        return {"double-greedy", false, "deterministic variant below (1/3) max"};
      }
    }
    double sum = 0.0;
    for (int s = 0; s < randomized_seeds; ++s) {
      SetFunctionOracle oracle(h_of, gi.ground);
      const std::vector<int> x = double_greedy(oracle, gi.ground,
                                               DoubleGreedyMode::randomized,
                                               seed * 1000003 + static_cast<std::uint64_t>(s));
      sum += h_of(x);
    }
    const double mean = sum / randomized_seeds;
    if (mean < 0.45 * hmax) {
      return {"double-greedy", false, "randomized seed-mean below 0.45 max"};
    }
    ++checked;
  }
  return {"double-greedy", true, fmt_detail(checked, worst)};
}

CheckResult check_pre_prune_safety(std::uint64_t seed, int instances, int n, int k) {
  Rng rng(seed);
  long long checked = 0;
  for (int inst = 0; inst < instances; ++inst) {
    const int ni = 4 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n - 3)));
    const int ki = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(k)));
    const Objective obj = random_feature_sqrt_objective(rng, ni, ni, 3);
    std::vector<int> ground(static_cast<std::size_t>(ni));
    std::iota(ground.begin(), ground.end(), 0);
    const std::vector<int> pruned = pre_prune(obj, ground, ki);
    if (static_cast<int>(pruned.size()) < std::min(ki, ni)) {
      return {"pre-prune-safety", false, "pre-prune shrank below k"};
    }
    const Solution before = greedy(obj, ground, ki);
    const Solution after = greedy(obj, pruned, ki);
    if (before.selected != after.selected || before.value != after.value) {
      return {"pre-prune-safety", false, "greedy changed after pre-prune"};
    }
    ++checked;
  }
  return {"pre-prune-safety", true, fmt_detail(checked, 0.0)};
}

CheckResult check_trace_arithmetic(std::uint64_t seed, int n, double r, double c) {
  SynthConfig synth;
  synth.n_elements = n;
  synth.n_features = std::max(16, n / 4);
  synth.nnz_per_element = 6;
  synth.cluster_count = std::max(2, n / 20);
  synth.seed = seed;
  const Objective obj = Objective::feature_sqrt(generate_synthetic(synth));
  std::vector<int> ground(static_cast<std::size_t>(n));
  std::iota(ground.begin(), ground.end(), 0);

  SparsifierConfig cfg;
  cfg.r = r;
  cfg.c = c;
  cfg.seed = seed;
  const SparsifyResult res = sparsify(obj, ground, cfg);

  // Closed-form shrink recursion forced by the rounding rules.
  const double log_n = std::log2(static_cast<double>(n));
  const int s_target = static_cast<int>(std::ceil(r * log_n));
  const double frac = 1.0 - 1.0 / std::sqrt(c);
  int cur = n;
  std::size_t iters = 0;
  while (static_cast<double>(cur) > r * log_n) {
    if (iters >= res.trace.iterations.size()) {
      return {"trace-arithmetic", false, "trace shorter than recursion"};
    }
    const PruneIteration& it = res.trace.iterations[iters];
    const int s = std::min(s_target, cur);
    const int rest = cur - s;
    const int removed = static_cast<int>(std::floor(frac * rest));
    const int kept = rest - removed;
    if (it.size_before != cur || it.sample_size != s || it.removed_count != removed ||
        it.kept_size != kept) {
      return {"trace-arithmetic", false, "recorded sizes deviate from recursion"};
    }
    cur = kept;
    ++iters;
    if (cur == 0) break;
  }
  if (iters != res.trace.iterations.size()) {
    return {"trace-arithmetic", false, "trace longer than recursion"};
  }
  const std::size_t bound =
      static_cast<std::size_t>(std::ceil(log_n / std::log2(std::sqrt(c)))) + 1;
  if (iters > bound) return {"trace-arithmetic", false, "iteration count above bound"};

  // Removal ordering: replay each round and compare divergence partitions.
  const GlobalGains globals = compute_global_gains(obj, ground);
  const GraphWeights weights(obj, globals);
  std::vector<int> current = ground;
  for (const PruneIteration& it : res.trace.iterations) {
    std::vector<char> probe(static_cast<std::size_t>(n), 0), rm(static_cast<std::size_t>(n), 0);
    for (int u : it.sampled) probe[u] = 1;
    for (int u : it.removed) rm[u] = 1;
    std::vector<int> rest;
    for (int v : current) {
      if (!probe[v]) rest.push_back(v);
    }
    const std::vector<double> div = weights.divergence_all(it.sampled, rest);
    double max_removed = -1e18, min_kept = 1e18;
    for (std::size_t i = 0; i < rest.size(); ++i) {
      if (rm[rest[i]]) {
        max_removed = std::max(max_removed, div[i]);
      } else {
        min_kept = std::min(min_kept, div[i]);
      }
    }
    if (max_removed > min_kept) {
      return {"trace-arithmetic", false, "a removed divergence exceeds a kept one"};
    }
    std::vector<int> next;
    for (int v : rest) {
      if (!rm[v]) next.push_back(v);
    }
    current = std::move(next);
  }

  const SparsifyResult rerun = sparsify(obj, ground, cfg);
  if (rerun.kept != res.kept) {
    return {"trace-arithmetic", false, "rerun with same seed produced different V'"};
  }
  std::ostringstream ss;
  ss << iters << " iterations, |V'| = " << res.kept.size();
  return {"trace-arithmetic", true, ss.str()};
}

CheckResult check_rouge_examples() {
  const auto close = [](double a, double b) { return std::fabs(a - b) < 1e-12; };
  {
    const TokenList t = {"x", "y", "z", "w"};
    const Rouge2Score s = rouge2(t, t);
    if (!close(s.recall, 1.0) || !close(s.f1, 1.0)) {
      return {"rouge2-examples", false, "identity case not (1, 1)"};
    }
  }
  {
    const Rouge2Score s = rouge2({"a", "b", "c"}, {"a", "b", "d"});
    if (!close(s.recall, 0.5) || !close(s.f1, 0.5)) {
      return {"rouge2-examples", false, "hand example {ab,bc} vs {ab,bd} wrong"};
    }
  }
  {
    const Rouge2Score s = rouge2({"a", "b"}, {"c", "d"});
    if (!close(s.recall, 0.0) || !close(s.f1, 0.0)) {
      return {"rouge2-examples", false, "disjoint case not (0, 0)"};
    }
  }
  // Range properties over seeded random token lists.
  Rng rng(5);
  const std::vector<std::string> vocab = {"a", "b", "c", "d"};
  for (int t = 0; t < 500; ++t) {
    TokenList x, y;
    const auto fill = [&](TokenList& out) {
      const std::size_t len = 1 + rng.next_below(8);
      for (std::size_t i = 0; i < len; ++i) out.push_back(vocab[rng.next_below(vocab.size())]);
    };
    fill(x);
    fill(y);
    const Rouge2Score s = rouge2(x, y);
    const Rouge2Score sw = rouge2(y, x);
    if (s.recall < 0.0 || s.recall > 1.0 || s.precision < 0.0 || s.precision > 1.0) {
      return {"rouge2-examples", false, "score out of [0,1]"};
    }
    if (s.f1 > 2.0 * std::min(s.recall, s.precision) + 1e-12) {
      return {"rouge2-examples", false, "f1 above 2 min(recall, precision)"};
    }
    if (y.size() >= 2 && x.size() >= 2 && std::fabs(s.f1 - sw.f1) > 1e-12) {
      return {"rouge2-examples", false, "f1 not symmetric under swap"};
    }
  }
  return {"rouge2-examples", true, "3 hand examples + 500 sampled properties"};
}

std::vector<CheckResult> run_validation_suite(bool quick, std::uint64_t seed) {
  std::vector<CheckResult> out;
  if (quick) {
    out.push_back(check_objective_properties(seed, 5, 10));
    out.push_back(check_lemma1(seed + 1, 2000, 10));
    out.push_back(check_lemma2(seed + 2, 2000, 10));
    out.push_back(check_lemma3(seed + 3, 4, 12));
    out.push_back(check_pruning_price(seed + 4, 1000, 10));
    out.push_back(check_h_properties(seed + 5, 8, 7));
    out.push_back(check_approximation_bound(seed + 6, 8, 8, 2));
    out.push_back(check_greedy_ratio(seed + 7, 50, 10, 3));
    out.push_back(check_lazy_equivalence(seed + 8, 20, 100));
    out.push_back(check_sieve_guarantee(seed + 9, 50, 8, 3));
    out.push_back(check_double_greedy_bounds(seed + 10, 8, 6, 100));
    out.push_back(check_pre_prune_safety(seed + 11, 50, 10, 3));
    out.push_back(check_trace_arithmetic(seed + 12, 512, 2.0, 8.0));
    out.push_back(check_rouge_examples());
  } else {
    out.push_back(check_objective_properties(seed, 20, 12));
    out.push_back(check_lemma1(seed + 1, 10000, 12));
    out.push_back(check_lemma2(seed + 2, 10000, 12));
    out.push_back(check_lemma3(seed + 3, 20, 30));
    out.push_back(check_pruning_price(seed + 4, 5000, 12));
    out.push_back(check_h_properties(seed + 5, 50, 8));
    out.push_back(check_approximation_bound(seed + 6, 50, 10, 2));
    out.push_back(check_greedy_ratio(seed + 7, 200, 12, 4));
    out.push_back(check_lazy_equivalence(seed + 8, 100, 200));
    out.push_back(check_sieve_guarantee(seed + 9, 200, 10, 3));
    out.push_back(check_double_greedy_bounds(seed + 10, 20, 8, 500));
    out.push_back(check_pre_prune_safety(seed + 11, 200, 12, 4));
    out.push_back(check_trace_arithmetic(seed + 12, 1024, 2.0, 8.0));
    out.push_back(check_rouge_examples());
  }
  return out;
}

}  // namespace subsparse
