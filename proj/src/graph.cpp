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

#include "subsparse/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace subsparse {

namespace {
std::vector<int> sorted_unique(std::span<const int> ids) {
  std::vector<int> out(ids.begin(), ids.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}
}  // namespace

GlobalGains compute_global_gains(const Objective& objective, std::span<const int> ground) {
  if (ground.empty()) throw std::invalid_argument("compute_global_gains: empty ground set");
  GlobalGains out;
  out.reference = sorted_unique(ground);
  out.g.assign(static_cast<std::size_t>(objective.n_elements()), 0.0);

  if (objective.kind() == ObjectiveKind::feature_sqrt) {
    // g[u] from full column sums; cost proportional to the nonzeros.
    const FeatureMatrix* fm = objective.feature_data();
    std::vector<double> colsum(static_cast<std::size_t>(fm->n_features), 0.0);
    for (int v : out.reference) {
      for (const auto& [f, w] : objective.feature_row(v)) colsum[f] += w;
    }
    std::vector<double> sqrt_colsum(colsum.size());
    for (std::size_t f = 0; f < colsum.size(); ++f) sqrt_colsum[f] = std::sqrt(colsum[f]);
    for (int u : out.reference) {
      double g = 0.0;
      for (const auto& [f, w] : objective.feature_row(u)) {
        g += sqrt_colsum[f] - std::sqrt(colsum[f] - w);
      }
      out.g[u] = g;
    }
    return out;
  }

  if (objective.kind() == ObjectiveKind::facility_location) {
    const SimilarityMatrix* sm = objective.similarity_data();
    const int n = sm->n_elements;
    // Per row, best and runner-up over the reference set.
    for (int i = 0; i < n; ++i) {
      double best = -1.0, second = -1.0;
      int best_id = -1;
      for (int j : out.reference) {
        const double s = sm->at(i, j);
        if (s > best) {
          second = best;
          best = s;
          best_id = j;
        } else if (s > second) {
          second = s;
        }
      }
      for (int u : out.reference) {
        if (u == best_id) out.g[u] += best - std::max(second, 0.0);
      }
    }
    return out;
  }

  const double f_all = objective.eval(out.reference);
  for (int u : out.reference) {
    std::vector<int> without;
    without.reserve(out.reference.size() - 1);
    for (int v : out.reference) {
      if (v != u) without.push_back(v);
    }
    out.g[u] = f_all - objective.eval(without);
  }
  return out;
}

GraphWeights::GraphWeights(Objective objective, GlobalGains globals)
    : objective_(std::move(objective)), globals_(std::move(globals)) {
  singleton_.assign(static_cast<std::size_t>(objective_.n_elements()), 0.0);
  if (objective_.kind() == ObjectiveKind::feature_sqrt) {
    for (int u : globals_.reference) {
      double s = 0.0;
      for (const auto& [f, w] : objective_.feature_row(u)) s += std::sqrt(w);
      singleton_[u] = s;
    }
  } else {
    GainContext ctx = objective_.context();
    for (int u : globals_.reference) singleton_[u] = ctx.gain(u);
  }
}

double GraphWeights::edge_weight(int u, int v) const {
  if (u == v) return -globals_.g[u];
  const int pair[1] = {u};
  return objective_.marginal_gain(v, pair) - globals_.g[u];
}

double GraphWeights::conditional_edge_weight(int u, int v, std::span<const int> s) const {
  for (int x : s) {
    if (x == u || x == v) {
      throw std::invalid_argument("conditional_edge_weight: u or v in S");
    }
  }
  std::vector<int> s_plus_u(s.begin(), s.end());
  s_plus_u.push_back(u);
  return objective_.marginal_gain(v, s_plus_u) - globals_.g[u];
}

double GraphWeights::divergence(std::span<const int> u_set, int v) const {
  if (u_set.empty()) throw std::invalid_argument("divergence: empty U");
  double best = std::numeric_limits<double>::infinity();
  for (int u : u_set) best = std::min(best, edge_weight(u, v));
  return best;
}

std::vector<double> GraphWeights::divergence_all(std::span<const int> u_set,
                                                 std::span<const int> rest) const {
  if (u_set.empty()) throw std::invalid_argument("divergence_all: empty U");
  std::vector<double> out(rest.size(), std::numeric_limits<double>::infinity());

  if (objective_.kind() != ObjectiveKind::feature_sqrt) {
    for (std::size_t i = 0; i < rest.size(); ++i) out[i] = divergence(u_set, rest[i]);
    return out;
  }

  // feature_sqrt: w(u, v) = singleton(v) - g[u] + corr(u, v), where the
  // correction is a sum over shared features only and never positive.
  // Probes with no feature overlap reduce to singleton(v) - max g, so the
  // work is one pass over rest plus the co-occurring pairs. Postings are
  // built over the (small) probe side only.
  double gmax = -std::numeric_limits<double>::infinity();
  for (int u : u_set) gmax = std::max(gmax, globals_.g[u]);

  const FeatureMatrix* fm = objective_.feature_data();
  struct ProbeEntry {
    int idx;  // position in u_set
    double w;
    double sqrt_w;
  };
  std::vector<std::size_t> probe_ptr(static_cast<std::size_t>(fm->n_features) + 1, 0);
  std::size_t probe_nnz = 0;
  for (int u : u_set) {
    for (const auto& [f, w] : objective_.feature_row(u)) {
      ++probe_ptr[f + 1];
      ++probe_nnz;
    }
  }
  for (int f = 0; f < fm->n_features; ++f) probe_ptr[f + 1] += probe_ptr[f];
  std::vector<ProbeEntry> probe_data(probe_nnz);
  {
    std::vector<std::size_t> pos(probe_ptr.begin(), probe_ptr.end() - 1);
    for (std::size_t j = 0; j < u_set.size(); ++j) {
      for (const auto& [f, w] : objective_.feature_row(u_set[j])) {
        probe_data[pos[f]++] = {static_cast<int>(j), w, std::sqrt(w)};
      }
    }
  }

  std::vector<double> acc(u_set.size(), 0.0);
  std::vector<int> touched;
  touched.reserve(64);
  for (std::size_t i = 0; i < rest.size(); ++i) {
    const int v = rest[i];
    double best = singleton_[v] - gmax;
    for (const auto& [f, wv] : objective_.feature_row(v)) {
      const std::size_t lo = probe_ptr[f], hi = probe_ptr[f + 1];
      if (lo == hi) continue;
      const double sqrt_wv = std::sqrt(wv);
      for (std::size_t p = lo; p < hi; ++p) {
        const ProbeEntry& e = probe_data[p];
        if (acc[e.idx] == 0.0) touched.push_back(e.idx);
        acc[e.idx] += std::sqrt(e.w + wv) - e.sqrt_w - sqrt_wv;
      }
    }
    for (int j : touched) {
      best = std::min(best, singleton_[v] - globals_.g[u_set[j]] + acc[j]);
      acc[j] = 0.0;
    }
    touched.clear();
    out[i] = best;
  }
  return out;
}

int h_value(const SparsificationInstance& inst, std::span<const int> vprime) {
  if (vprime.empty()) return 0;
  std::vector<char> in_vp(static_cast<std::size_t>(inst.weights->objective().n_elements()), 0);
  for (int u : vprime) in_vp[u] = 1;
  int covered = 0;
  for (int v : inst.ground) {
    if (in_vp[v]) continue;
    double best = std::numeric_limits<double>::infinity();
    for (int x : vprime) {
      best = std::min(best, inst.weights->edge_weight(x, v));
      if (best <= inst.epsilon) break;
    }
    if (best <= inst.epsilon) ++covered;
  }
  return covered;
}

std::pair<std::vector<int>, int> exact_sparsifier_optimum(const SparsificationInstance& inst) {
  const int n = static_cast<int>(inst.ground.size());
  if (n > 12) throw std::invalid_argument("exact_sparsifier_optimum: |ground| > 12 refused");

  // Local dense weight table over the (small) ground set.
  std::vector<double> w(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      w[static_cast<std::size_t>(a) * n + b] =
          inst.weights->edge_weight(inst.ground[a], inst.ground[b]);
    }
  }

  const std::uint32_t total = 1u << n;
  int best_h = 0;
  std::uint32_t best_mask = 0;  // empty set

  const auto ids_of = [&](std::uint32_t mask) {
    std::vector<int> ids;
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) ids.push_back(inst.ground[i]);
    }
    return ids;
  };

  for (std::uint32_t mask = 1; mask < total; ++mask) {
    int h = 0;
    for (int b = 0; b < n; ++b) {
      if (mask & (1u << b)) continue;
      double best = std::numeric_limits<double>::infinity();
      for (int a = 0; a < n; ++a) {
        if (!(mask & (1u << a))) continue;
        best = std::min(best, w[static_cast<std::size_t>(a) * n + b]);
        if (best <= inst.epsilon) break;
      }
      if (best <= inst.epsilon) ++h;
    }
    bool better = h > best_h;
    if (h == best_h) {
      const int sz = std::popcount(mask);
      const int best_sz = std::popcount(best_mask);
      if (sz < best_sz) {
        better = true;
      } else if (sz == best_sz) {
        better = ids_of(mask) < ids_of(best_mask);
      }
    }
    if (better) {
      best_h = h;
      best_mask = mask;
    }
  }
  std::vector<int> vstar = ids_of(best_mask);
  const int k = static_cast<int>(vstar.size());
  return {std::move(vstar), k};
}

}  // namespace subsparse
