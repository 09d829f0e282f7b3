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

#include "subsparse/objective.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace subsparse {

namespace {
constexpr int kMaxExplicitElements = 20;

std::string set_to_string(std::uint32_t mask, int n) {
  std::string out = "{";
  bool first = true;
  for (int i = 0; i < n; ++i) {
    if (mask & (1u << i)) {
      if (!first) out += ",";
      out += std::to_string(i);
      first = false;
    }
  }
  return out + "}";
}
}  // namespace

struct Objective::Impl {
  ObjectiveKind kind = ObjectiveKind::feature_sqrt;
  int n = 0;

  // feature_sqrt
  FeatureMatrix features;
  std::vector<std::size_t> row_ptr;
  std::vector<std::pair<int, double>> row_data;   // (feature, weight) per element
  std::vector<std::size_t> post_ptr;
  std::vector<std::pair<int, double>> post_data;  // (element, weight) per feature

  // facility_location
  SimilarityMatrix similarity;

  // explicit_table
  std::vector<double> table;
};

Objective::Objective(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

Objective Objective::feature_sqrt(FeatureMatrix m) {
  m.validate();
  auto impl = std::make_shared<Impl>();
  impl->kind = ObjectiveKind::feature_sqrt;
  impl->n = m.n_elements;

  std::vector<std::size_t> row_count(m.n_elements + 1, 0);
  std::vector<std::size_t> post_count(m.n_features + 1, 0);
  for (const auto& e : m.entries) {
    ++row_count[e.element + 1];
    ++post_count[e.feature + 1];
  }
  for (int i = 0; i < m.n_elements; ++i) row_count[i + 1] += row_count[i];
  for (int f = 0; f < m.n_features; ++f) post_count[f + 1] += post_count[f];
  impl->row_ptr = row_count;
  impl->post_ptr = post_count;
  impl->row_data.resize(m.entries.size());
  impl->post_data.resize(m.entries.size());
  {
    std::vector<std::size_t> rpos(row_count.begin(), row_count.end() - 1);
    std::vector<std::size_t> ppos(post_count.begin(), post_count.end() - 1);
    for (const auto& e : m.entries) {
      impl->row_data[rpos[e.element]++] = {e.feature, e.weight};
      impl->post_data[ppos[e.feature]++] = {e.element, e.weight};
    }
  }
  // Deterministic order within rows and postings.
  for (int v = 0; v < m.n_elements; ++v) {
    std::sort(impl->row_data.begin() + impl->row_ptr[v],
              impl->row_data.begin() + impl->row_ptr[v + 1]);
  }
  for (int f = 0; f < m.n_features; ++f) {
    std::sort(impl->post_data.begin() + impl->post_ptr[f],
              impl->post_data.begin() + impl->post_ptr[f + 1]);
  }
  impl->features = std::move(m);
  return Objective(std::move(impl));
}

Objective Objective::facility_location(SimilarityMatrix m) {
  m.validate();
  auto impl = std::make_shared<Impl>();
  impl->kind = ObjectiveKind::facility_location;
  impl->n = m.n_elements;
  impl->similarity = std::move(m);
  return Objective(std::move(impl));
}

Objective Objective::explicit_table(int n, std::vector<double> table,
                                    bool require_nonnegative) {
  if (n < 0 || n > kMaxExplicitElements) {
    throw std::invalid_argument("explicit_table: n must be in [0, 20]");
  }
  if (table.size() != (std::size_t{1} << n)) {
    throw std::invalid_argument("explicit_table: table must cover all 2^n subsets");
  }
  if (table[0] != 0.0) {
    throw std::invalid_argument("explicit_table: f(empty) must be 0");
  }
  if (require_nonnegative) {
    for (double v : table) {
      if (!(v >= 0.0)) throw std::invalid_argument("explicit_table: negative value");
    }
  }
  // Pairwise diminishing-returns check, equivalent to the general A <= B form:
  // f(T+i) - f(T) >= f(T+i+j) - f(T+j) for all T and i, j not in T.
  const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
  for (std::uint32_t t = 0; t <= full; ++t) {
    for (int i = 0; i < n; ++i) {
      if (t & (1u << i)) continue;
      for (int j = i + 1; j < n; ++j) {
        if (t & (1u << j)) continue;
        const double lhs = table[t | (1u << i)] - table[t];
        const double rhs = table[t | (1u << i) | (1u << j)] - table[t | (1u << j)];
        if (lhs < rhs - 1e-12) {
          throw std::invalid_argument(
              "explicit_table: submodularity violated for A=" + set_to_string(t, n) +
              ", B=" + set_to_string(t | (1u << j), n) + ", v=" + std::to_string(i));
        }
      }
    }
    if (t == full) break;
  }
  auto impl = std::make_shared<Impl>();
  impl->kind = ObjectiveKind::explicit_table;
  impl->n = n;
  impl->table = std::move(table);
  return Objective(std::move(impl));
}

ObjectiveKind Objective::kind() const { return impl_->kind; }
int Objective::n_elements() const { return impl_->n; }

const FeatureMatrix* Objective::feature_data() const {
  return impl_->kind == ObjectiveKind::feature_sqrt ? &impl_->features : nullptr;
}

const SimilarityMatrix* Objective::similarity_data() const {
  return impl_->kind == ObjectiveKind::facility_location ? &impl_->similarity : nullptr;
}

std::span<const std::pair<int, double>> Objective::feature_postings(int f) const {
  const Impl& im = *impl_;
  return {im.post_data.data() + im.post_ptr[f], im.post_ptr[f + 1] - im.post_ptr[f]};
}

std::span<const std::pair<int, double>> Objective::feature_row(int v) const {
  const Impl& im = *impl_;
  return {im.row_data.data() + im.row_ptr[v], im.row_ptr[v + 1] - im.row_ptr[v]};
}

double Objective::eval(std::span<const int> s) const {
  const Impl& im = *impl_;
  for (int v : s) {
    if (v < 0 || v >= im.n) {
      throw std::invalid_argument("eval: element id " + std::to_string(v) + " out of range");
    }
  }
  switch (im.kind) {
    case ObjectiveKind::feature_sqrt: {
      // Scratch evaluation over the touched features only.
      std::vector<double> dense(im.features.n_features, 0.0);
      std::vector<int> touched;
      for (int v : s) {
        for (std::size_t i = im.row_ptr[v]; i < im.row_ptr[v + 1]; ++i) {
          const auto& [f, w] = im.row_data[i];
          if (dense[f] == 0.0 && w > 0.0) touched.push_back(f);
          dense[f] += w;
        }
      }
      double total = 0.0;
      std::sort(touched.begin(), touched.end());
      for (int f : touched) total += std::sqrt(dense[f]);
      return total;
    }
    case ObjectiveKind::facility_location: {
      if (s.empty()) return 0.0;
      double total = 0.0;
      for (int i = 0; i < im.n; ++i) {
        double best = 0.0;
        for (int v : s) best = std::max(best, im.similarity.at(i, v));
        total += best;
      }
      return total;
    }
    case ObjectiveKind::explicit_table: {
      std::uint32_t mask = 0;
      for (int v : s) mask |= (1u << v);
      return im.table[mask];
    }
  }
  return 0.0;
}

double Objective::marginal_gain(int v, std::span<const int> s) const {
  if (v < 0 || v >= impl_->n) {
    throw std::invalid_argument("marginal_gain: element id out of range");
  }
  for (int x : s) {
    if (x == v) throw std::invalid_argument("marginal_gain: v already in S");
  }
  std::vector<int> with(s.begin(), s.end());
  with.push_back(v);
  return eval(with) - eval(s);
}

GainContext Objective::context(std::span<const int> s) const {
  return GainContext(impl_, s);
}

GainContext::GainContext(std::shared_ptr<const Objective::Impl> impl, std::span<const int> s)
    : impl_(std::move(impl)) {
  const auto& im = *impl_;
  in_set_.assign(im.n, 0);
  switch (im.kind) {
    case ObjectiveKind::feature_sqrt:
      feature_sums_.assign(im.features.n_features, 0.0);
      break;
    case ObjectiveKind::facility_location:
      cur_max_.assign(im.n, 0.0);
      break;
    case ObjectiveKind::explicit_table:
      break;
  }
  for (int v : s) commit(v);
}

double GainContext::gain(int v) const {
  ++evals_;
  return gain_impl(v);
}

double GainContext::gain_impl(int v) const {
  const auto& im = *impl_;
  if (v < 0 || v >= im.n) throw std::invalid_argument("gain: element id out of range");
  if (in_set_[v]) throw std::invalid_argument("gain: element already in set");
  switch (im.kind) {
    case ObjectiveKind::feature_sqrt: {
      double g = 0.0;
      for (std::size_t i = im.row_ptr[v]; i < im.row_ptr[v + 1]; ++i) {
        const auto& [f, w] = im.row_data[i];
        g += std::sqrt(feature_sums_[f] + w) - std::sqrt(feature_sums_[f]);
      }
      return g;
    }
    case ObjectiveKind::facility_location: {
      double g = 0.0;
      for (int i = 0; i < im.n; ++i) {
        g += std::max(0.0, im.similarity.at(i, v) - cur_max_[i]);
      }
      return g;
    }
    case ObjectiveKind::explicit_table:
      return im.table[mask_ | (1u << v)] - im.table[mask_];
  }
  return 0.0;
}

void GainContext::commit(int v) {
  const auto& im = *impl_;
  const double g = gain_impl(v);
  switch (im.kind) {
    case ObjectiveKind::feature_sqrt:
      for (std::size_t i = im.row_ptr[v]; i < im.row_ptr[v + 1]; ++i) {
        const auto& [f, w] = im.row_data[i];
        feature_sums_[f] += w;
      }
      break;
    case ObjectiveKind::facility_location:
      for (int i = 0; i < im.n; ++i) {
        cur_max_[i] = std::max(cur_max_[i], im.similarity.at(i, v));
      }
      break;
    case ObjectiveKind::explicit_table:
      mask_ |= (1u << v);
      break;
  }
  in_set_[v] = 1;
  current_.push_back(v);
  value_ += g;
}

bool GainContext::local_invalidation() const {
  return impl_->kind == ObjectiveKind::feature_sqrt;
}

void GainContext::affected_by(int v, std::vector<int>* out) const {
  const auto& im = *impl_;
  out->clear();
  if (im.kind != ObjectiveKind::feature_sqrt) {
    throw std::logic_error("affected_by: only available for feature_sqrt");
  }
  for (std::size_t i = im.row_ptr[v]; i < im.row_ptr[v + 1]; ++i) {
    const int f = im.row_data[i].first;
    for (std::size_t j = im.post_ptr[f]; j < im.post_ptr[f + 1]; ++j) {
      out->push_back(im.post_data[j].first);
    }
  }
  std::sort(out->begin(), out->end());
  out->erase(std::unique(out->begin(), out->end()), out->end());
}

}  // namespace subsparse
