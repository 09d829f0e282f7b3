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

#include "subsparse/maximize.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

#include "subsparse/rng.hpp"

namespace subsparse {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<int> sorted_ids(std::span<const int> ground) {
  std::vector<int> ids(ground.begin(), ground.end());
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

}  // namespace

Solution greedy(const Objective& objective, std::span<const int> ground, int k) {
  const auto t0 = Clock::now();
  if (k < 0) throw std::invalid_argument("greedy: k < 0");
  Solution sol;
  sol.algorithm = "greedy";
  sol.k = k;

  std::vector<int> remaining = sorted_ids(ground);
  GainContext ctx = objective.context();
  const int steps = std::min<int>(k, static_cast<int>(remaining.size()));
  for (int step = 0; step < steps; ++step) {
    double best = -std::numeric_limits<double>::infinity();
    std::size_t best_pos = remaining.size();
    for (std::size_t i = 0; i < remaining.size(); ++i) {
      const double g = ctx.gain(remaining[i]);
      if (g > best) {
        best = g;
        best_pos = i;
      }
    }
    if (best_pos == remaining.size() || best <= 0.0) break;
    const int chosen = remaining[best_pos];
    ctx.commit(chosen);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best_pos));
    sol.selected.push_back(chosen);
    sol.step_gains.push_back(best);
  }
  sol.value = ctx.value();
  sol.evals_used = ctx.evals();
  sol.wall_time_s = seconds_since(t0);
  return sol;
}

Solution lazy_greedy(const Objective& objective, std::span<const int> ground, int k) {
  const auto t0 = Clock::now();
  if (k < 0) throw std::invalid_argument("lazy_greedy: k < 0");
  Solution sol;
  sol.algorithm = "lazy_greedy";
  sol.k = k;

  const std::vector<int> ids = sorted_ids(ground);

  // A small sub-ground over a feature matrix runs on a compacted instance so
  // invalidation lists stay local to the subset. The id maps are monotonic,
  // making selections, gains, and eval counts identical to the direct run.
  if (objective.kind() == ObjectiveKind::feature_sqrt && !ids.empty() &&
      ids.size() * 4 <= static_cast<std::size_t>(objective.n_elements())) {
    const FeatureMatrix* fm = objective.feature_data();
    std::vector<int> feat_map(static_cast<std::size_t>(fm->n_features), -1);
    FeatureMatrix sub;
    sub.n_elements = static_cast<int>(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) {
      for (const auto& [f, w] : objective.feature_row(ids[i])) {
        if (feat_map[f] < 0) feat_map[f] = 0;
      }
    }
    int next_feature = 0;
    for (int f = 0; f < fm->n_features; ++f) {
      if (feat_map[f] == 0) feat_map[f] = next_feature++;
    }
    sub.n_features = std::max(next_feature, 1);
    for (std::size_t i = 0; i < ids.size(); ++i) {
      for (const auto& [f, w] : objective.feature_row(ids[i])) {
        sub.entries.push_back({static_cast<int>(i), feat_map[f], w});
      }
    }
    const Objective subobj = Objective::feature_sqrt(std::move(sub));
    std::vector<int> sub_ids(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) sub_ids[i] = static_cast<int>(i);
    sol = lazy_greedy(subobj, sub_ids, k);
    for (int& v : sol.selected) v = ids[static_cast<std::size_t>(v)];
    sol.wall_time_s = seconds_since(t0);
    return sol;
  }
  GainContext ctx = objective.context();

  struct Entry {
    double gain;
    int id;
    std::uint64_t stamp;
  };
  // Max-heap: larger gain first, ties by smaller id (matching eager greedy).
  const auto worse = [](const Entry& a, const Entry& b) {
    if (a.gain != b.gain) return a.gain < b.gain;
    return a.id > b.id;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> heap(worse);

  std::vector<std::uint64_t> stamp(static_cast<std::size_t>(objective.n_elements()), 0);
  std::vector<char> picked(static_cast<std::size_t>(objective.n_elements()), 0);
  for (int id : ids) heap.push({ctx.gain(id), id, 0});

  const bool local = ctx.local_invalidation();
  std::vector<int> affected;
  const int steps = std::min<int>(k, static_cast<int>(ids.size()));
  for (int step = 0; step < steps; ++step) {
    int chosen = -1;
    double chosen_gain = 0.0;
    while (!heap.empty()) {
      const Entry top = heap.top();
      heap.pop();
      if (picked[top.id]) continue;
      if (top.stamp != stamp[top.id]) {
        heap.push({ctx.gain(top.id), top.id, stamp[top.id]});
        continue;
      }
      chosen = top.id;
      chosen_gain = top.gain;
      break;
    }
    if (chosen < 0 || chosen_gain <= 0.0) break;
    ctx.commit(chosen);
    picked[chosen] = 1;
    sol.selected.push_back(chosen);
    sol.step_gains.push_back(chosen_gain);
    // Invalidate only gains that can actually change.
    if (local) {
      ctx.affected_by(chosen, &affected);
      for (int u : affected) ++stamp[u];
    } else {
      for (auto& s : stamp) ++s;
    }
  }
  sol.value = ctx.value();
  sol.evals_used = ctx.evals();
  sol.wall_time_s = seconds_since(t0);
  return sol;
}

Solution sieve_streaming(const Objective& objective, std::span<const int> stream, int k,
                         const SieveConfig& cfg, std::uint64_t* peak_retained_ids) {
  const auto t0 = Clock::now();
  if (k < 0) throw std::invalid_argument("sieve_streaming: k < 0");
  if (cfg.n_thresholds < 1) throw std::invalid_argument("sieve_streaming: n_thresholds < 1");
  Solution sol;
  sol.algorithm = "sieve_streaming";
  sol.k = k;
  if (peak_retained_ids) *peak_retained_ids = 0;
  std::uint64_t evals = 0;

  struct Sieve {
    long long index;  // threshold = (1 + eps)^index
    double threshold;
    GainContext ctx;
    std::vector<double> gains;
  };
  std::vector<Sieve> sieves;  // kept sorted by index

  if (k == 0 || stream.empty()) {
    sol.wall_time_s = seconds_since(t0);
    return sol;
  }

  // Grid ratio chosen so n_thresholds guesses span [m, 2km].
  const int t_count = cfg.n_thresholds;
  const double ratio =
      (t_count > 1) ? std::pow(2.0 * k, 1.0 / (t_count - 1)) : 2.0 * k;
  const double log_ratio = std::log(ratio);

  double max_singleton = 0.0;
  std::uint64_t peak = 0;
  GainContext probe = objective.context();  // stays empty; singleton values

  for (int e : stream) {
    const double single = probe.gain(e);
    ++evals;
    max_singleton = std::max(max_singleton, single);
    if (max_singleton > 0.0) {
      // Live guess indices j with m <= ratio^j <= 2km, clamped to the top
      // n_thresholds; dead sieves below the window are discarded.
      long long lo = static_cast<long long>(std::ceil(std::log(max_singleton) / log_ratio - 1e-12));
      long long hi = static_cast<long long>(
          std::floor(std::log(2.0 * k * max_singleton) / log_ratio + 1e-12));
      if (hi - lo + 1 > t_count) lo = hi - t_count + 1;
      std::erase_if(sieves, [&](const Sieve& s) { return s.index < lo || s.index > hi; });
      for (long long j = lo; j <= hi; ++j) {
        const auto it = std::lower_bound(
            sieves.begin(), sieves.end(), j,
            [](const Sieve& s, long long idx) { return s.index < idx; });
        if (it == sieves.end() || it->index != j) {
          sieves.insert(it, Sieve{j, std::pow(ratio, static_cast<double>(j)),
                                  objective.context(), {}});
        }
      }
    }
    std::uint64_t retained = 0;
    for (Sieve& s : sieves) {
      if (static_cast<int>(s.ctx.current().size()) < k && !s.ctx.contains(e)) {
        const double g = s.ctx.gain(e);
        ++evals;
        const double need =
            (s.threshold / 2.0 - s.ctx.value()) /
            static_cast<double>(k - static_cast<int>(s.ctx.current().size()));
        if (g >= need && g > 0.0) {
          s.ctx.commit(e);
          s.gains.push_back(g);
        }
      }
      retained += s.ctx.current().size();
    }
    peak = std::max(peak, retained);
  }

  const Sieve* best = nullptr;
  for (const Sieve& s : sieves) {
    if (!best || s.ctx.value() > best->ctx.value()) best = &s;
  }
  if (best) {
    sol.selected = best->ctx.current();
    sol.step_gains = best->gains;
    sol.value = best->ctx.value();
  }
  sol.evals_used = evals;
  if (peak_retained_ids) *peak_retained_ids = peak;
  sol.wall_time_s = seconds_since(t0);
  return sol;
}

Solution brute_force_max(const Objective& objective, std::span<const int> ground, int k) {
  const auto t0 = Clock::now();
  if (ground.size() > 20) {
    throw std::invalid_argument("brute_force_max: |ground| > 20 refused");
  }
  if (k < 0) throw std::invalid_argument("brute_force_max: k < 0");
  Solution sol;
  sol.algorithm = "brute_force";
  sol.k = k;
  const std::vector<int> ids = sorted_ids(ground);

  std::vector<int> cur;
  std::vector<int> best_set;
  double best_value = 0.0;  // empty set
  std::uint64_t evals = 0;

  // DFS over increasing ids yields lexicographic subset order; the first
  // strict improvement wins ties.
  auto dfs = [&](auto&& self, std::size_t start) -> void {
    if (static_cast<int>(cur.size()) >= k) return;
    for (std::size_t i = start; i < ids.size(); ++i) {
      cur.push_back(ids[i]);
      const double v = objective.eval(cur);
      ++evals;
      if (v > best_value) {
        best_value = v;
        best_set = cur;
      }
      self(self, i + 1);
      cur.pop_back();
    }
  };
  dfs(dfs, 0);

  sol.selected = best_set;
  sol.value = best_value;
  sol.evals_used = evals;
  for (std::size_t i = 0; i < best_set.size(); ++i) {
    std::vector<int> prefix(best_set.begin(), best_set.begin() + static_cast<std::ptrdiff_t>(i));
    sol.step_gains.push_back(objective.marginal_gain(best_set[i], prefix));
  }
  sol.wall_time_s = seconds_since(t0);
  return sol;
}

SetFunctionOracle::SetFunctionOracle(std::function<double(const std::vector<int>&)> f,
                                     std::span<const int> ground)
    : f_(std::move(f)), y_(ground.begin(), ground.end()) {
  std::sort(y_.begin(), y_.end());
}

double SetFunctionOracle::add_gain(int u) {
  std::vector<int> with = x_;
  with.push_back(u);
  return f_(with) - f_(x_);
}

double SetFunctionOracle::remove_gain(int u) {
  std::vector<int> without;
  without.reserve(y_.size());
  for (int v : y_) {
    if (v != u) without.push_back(v);
  }
  return f_(without) - f_(y_);
}

void SetFunctionOracle::commit_add(int u) { x_.push_back(u); }

void SetFunctionOracle::commit_remove(int u) {
  y_.erase(std::remove(y_.begin(), y_.end(), u), y_.end());
}

std::vector<int> double_greedy(UnconstrainedOracle& oracle, std::span<const int> ground,
                               DoubleGreedyMode mode, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<int> order = sorted_ids(ground);
  std::vector<int> x;
  for (int u : order) {
    const double a = oracle.add_gain(u);
    const double b = oracle.remove_gain(u);
    bool take;
    if (mode == DoubleGreedyMode::deterministic) {
      take = a >= b;
    } else {
      const double ap = std::max(a, 0.0);
      const double bp = std::max(b, 0.0);
      take = (ap + bp <= 0.0) ? (a >= b) : (rng.unit() < ap / (ap + bp));
    }
    if (take) {
      oracle.commit_add(u);
      x.push_back(u);
    } else {
      oracle.commit_remove(u);
    }
  }
  return x;
}

std::vector<int> double_greedy(const Objective& objective, std::span<const int> ground,
                               DoubleGreedyMode mode, std::uint64_t seed) {
  SetFunctionOracle oracle(
      [&objective](const std::vector<int>& s) { return objective.eval(s); }, ground);
  return double_greedy(oracle, ground, mode, seed);
}

}  // namespace subsparse
