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

#include "subsparse/sparsify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "subsparse/maximize.hpp"

namespace subsparse {

namespace {

std::vector<int> sorted_unique(std::span<const int> ids) {
  std::vector<int> out(ids.begin(), ids.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Incremental double-greedy oracle for the pruning objective h over a
// dense restricted weight block.
class HOracle : public UnconstrainedOracle {
 public:
  HOracle(std::vector<double> w, int n, double eps)
      : w_(std::move(w)), n_(n), eps_(eps) {
    min_w_x_.assign(n_, std::numeric_limits<double>::infinity());
    in_x_.assign(n_, 0);
    in_y_.assign(n_, 1);
    cover_cnt_y_.assign(n_, 0);
    for (int x = 0; x < n_; ++x) {
      for (int v = 0; v < n_; ++v) {
        if (x != v && at(x, v) <= eps_) ++cover_cnt_y_[v];
      }
    }
  }

  double add_gain(int u) override {
    // Moving u out of the counted domain, possibly covering others.
    double delta = covered_by_x(u) ? -1.0 : 0.0;
    for (int v = 0; v < n_; ++v) {
      if (v == u || in_x_[v]) continue;
      if (min_w_x_[v] > eps_ && at(u, v) <= eps_) delta += 1.0;
    }
    return delta;
  }

  double remove_gain(int u) override {
    // h(Y - u) - h(Y): u joins the counted domain; others lose u as coverer.
    double delta = 0.0;
    const int cnt_u = cover_cnt_y_[u];  // coverers of u within Y \ u already excluded via x != v
    if (cnt_u >= 1) delta += 1.0;
    for (int v : removed_) {
      const int drop = at(u, v) <= eps_ ? 1 : 0;
      if (cover_cnt_y_[v] >= 1 && cover_cnt_y_[v] - drop < 1) delta -= 1.0;
    }
    return delta;
  }

  void commit_add(int u) override {
    in_x_[u] = 1;
    for (int v = 0; v < n_; ++v) {
      min_w_x_[v] = std::min(min_w_x_[v], at(u, v));
    }
  }

  void commit_remove(int u) override {
    in_y_[u] = 0;
    removed_.push_back(u);
    for (int v = 0; v < n_; ++v) {
      if (v != u && at(u, v) <= eps_) --cover_cnt_y_[v];
    }
  }

  bool covered_by_x(int v) const { return min_w_x_[v] <= eps_; }
  bool in_x(int v) const { return in_x_[v] != 0; }

 private:
  double at(int a, int b) const { return w_[static_cast<std::size_t>(a) * n_ + b]; }

  std::vector<double> w_;
  int n_;
  double eps_;
  std::vector<double> min_w_x_;
  std::vector<char> in_x_, in_y_;
  std::vector<int> cover_cnt_y_;
  std::vector<int> removed_;
};

}  // namespace

SparsifyResult sparsify(const Objective& objective, std::span<const int> ground,
                        const SparsifierConfig& cfg) {
  if (!(cfg.c > 1.0)) throw std::invalid_argument("sparsify: c must be > 1");
  if (!(cfg.r > 0.0)) throw std::invalid_argument("sparsify: r must be > 0");
  std::vector<int> current = sorted_unique(ground);
  if (current.empty()) throw std::invalid_argument("sparsify: empty ground set");

  SparsifyResult result;
  const std::size_t n0 = current.size();  // n frozen at the original |V|
  const double log_n = std::log2(static_cast<double>(n0));
  const double loop_threshold = cfg.r * log_n;
  const int sample_target = static_cast<int>(std::ceil(cfg.r * log_n));
  const double remove_fraction = 1.0 - 1.0 / std::sqrt(cfg.c);

  if (static_cast<double>(n0) <= loop_threshold || sample_target == 0) {
    result.kept = std::move(current);
    result.trace.final_set = result.kept;
    return result;
  }

  const GlobalGains globals = compute_global_gains(objective, current);
  const GraphWeights weights(objective, globals);
  Rng rng(cfg.seed);
  std::vector<int> vprime;

  while (static_cast<double>(current.size()) > loop_threshold) {
    PruneIteration it;
    it.size_before = static_cast<int>(current.size());
    const int s = std::min<int>(sample_target, static_cast<int>(current.size()));
    it.sample_size = s;

    std::vector<int> probes =
        cfg.sampling == SamplingMode::uniform
            ? rng.sample_without_replacement(current, static_cast<std::size_t>(s))
            : importance_sample(current, globals, weights, s, rng);
    it.sampled = probes;

    std::vector<char> in_probe(static_cast<std::size_t>(objective.n_elements()), 0);
    for (int u : probes) in_probe[u] = 1;
    std::vector<int> rest;
    rest.reserve(current.size() - probes.size());
    for (int v : current) {
      if (!in_probe[v]) rest.push_back(v);
    }
    vprime.insert(vprime.end(), probes.begin(), probes.end());

    if (rest.empty()) {
      it.removed_count = 0;
      it.kept_size = 0;
      result.trace.iterations.push_back(std::move(it));
      current.clear();
      break;
    }

    const std::vector<double> div = weights.divergence_all(probes, rest);
    result.trace.total_weight_evals +=
        static_cast<std::uint64_t>(probes.size()) * rest.size();

    const int remove_count =
        static_cast<int>(std::floor(remove_fraction * static_cast<double>(rest.size())));
    // Smallest divergence pruned first; equal divergences drop smaller ids.
    // Only the removal boundary needs ordering, so select rather than sort.
    std::vector<std::pair<double, int>> keyed(rest.size());
    for (std::size_t i = 0; i < rest.size(); ++i) keyed[i] = {div[i], rest[i]};
    if (remove_count > 0 && static_cast<std::size_t>(remove_count) < keyed.size()) {
      std::nth_element(keyed.begin(), keyed.begin() + remove_count, keyed.end());
    }
    it.removed_count = remove_count;
    it.removed.reserve(static_cast<std::size_t>(remove_count));
    for (int i = 0; i < remove_count; ++i) it.removed.push_back(keyed[i].second);
    std::sort(it.removed.begin(), it.removed.end());

    // rest and removed are both ascending; kept is their difference.
    std::vector<int> kept;
    kept.reserve(rest.size() - static_cast<std::size_t>(remove_count));
    std::size_t ri = 0;
    for (int v : rest) {
      if (ri < it.removed.size() && it.removed[ri] == v) {
        ++ri;
      } else {
        kept.push_back(v);
      }
    }
    it.kept_size = static_cast<int>(kept.size());
    result.trace.iterations.push_back(std::move(it));
    current = std::move(kept);
  }

  vprime.insert(vprime.end(), current.begin(), current.end());
  std::sort(vprime.begin(), vprime.end());
  result.kept = std::move(vprime);
  result.trace.final_set = result.kept;
  return result;
}

std::vector<int> pre_prune(const Objective& objective, std::span<const int> ground, int k) {
  if (k < 1) throw std::invalid_argument("pre_prune: k < 1");
  std::vector<int> ids = sorted_unique(ground);
  if (k > static_cast<int>(ids.size())) return ids;

  const GlobalGains globals = compute_global_gains(objective, ids);
  std::vector<double> gains;
  gains.reserve(ids.size());
  for (int u : ids) gains.push_back(globals.g[u]);
  std::vector<double> sorted_gains = gains;
  std::nth_element(sorted_gains.begin(), sorted_gains.begin() + (k - 1), sorted_gains.end(),
                   std::greater<>());
  const double tau = sorted_gains[static_cast<std::size_t>(k - 1)];

  GainContext ctx = objective.context();
  std::vector<int> kept;
  for (int u : ids) {
    if (ctx.gain(u) >= tau) kept.push_back(u);
  }
  return kept;
}

std::vector<int> importance_sample(std::span<const int> ground, const GlobalGains& globals,
                                   const GraphWeights& weights, int s, Rng& rng) {
  std::vector<int> pool(ground.begin(), ground.end());
  if (s > static_cast<int>(pool.size())) {
    throw std::invalid_argument("importance_sample: s > |V|");
  }
  std::vector<double> score;
  score.reserve(pool.size());
  double max_score = 0.0;
  for (int u : pool) {
    const double sc = weights.singleton(u) + globals.g[u];
    score.push_back(sc);
    max_score = std::max(max_score, sc);
  }
  if (max_score <= 0.0) {
    return rng.sample_without_replacement(pool, static_cast<std::size_t>(s));
  }
  const double floor_score = max_score * 1e-12;
  for (double& sc : score) sc = std::max(sc, floor_score);

  // Sequential weighted draw without replacement.
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(s));
  for (int draw = 0; draw < s; ++draw) {
    double total = 0.0;
    for (double sc : score) total += sc;
    double x = rng.unit() * total;
    std::size_t pick = pool.size() - 1;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      x -= score[i];
      if (x < 0.0) {
        pick = i;
        break;
      }
    }
    out.push_back(pool[pick]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
    score.erase(score.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return out;
}

std::vector<int> post_reduce(const Objective& objective, std::span<const int> vprime,
                             double eps, std::uint64_t seed) {
  std::vector<int> ids = sorted_unique(vprime);
  if (ids.size() > 5000) {
    throw std::invalid_argument(
        "post_reduce: |V'| > 5000; the quadratic weight block would be too costly. "
        "Run sparsify with a larger c first.");
  }
  if (ids.empty()) return ids;

  // Restricted instance: weights and global gains taken over V' itself.
  const GlobalGains globals = compute_global_gains(objective, ids);
  const GraphWeights weights(objective, globals);
  const int n = static_cast<int>(ids.size());
  std::vector<double> w(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      w[static_cast<std::size_t>(a) * n + b] = weights.edge_weight(ids[a], ids[b]);
    }
  }

  HOracle oracle(w, n, eps);
  std::vector<int> slots(static_cast<std::size_t>(n));
  std::iota(slots.begin(), slots.end(), 0);
  const std::vector<int> x = double_greedy(oracle, slots, DoubleGreedyMode::randomized, seed);

  std::vector<char> keep(static_cast<std::size_t>(n), 0);
  for (int s : x) keep[s] = 1;
  // Elements not covered by the selected set must stay.
  for (int v = 0; v < n; ++v) {
    if (!keep[v] && !oracle.covered_by_x(v)) keep[v] = 1;
  }
  std::vector<int> out;
  for (int v = 0; v < n; ++v) {
    if (keep[v]) out.push_back(ids[v]);
  }
  return out;
}

}  // namespace subsparse
