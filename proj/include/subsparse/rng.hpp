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
#include <random>
#include <stdexcept>
#include <vector>

namespace subsparse {

// Seedable generator with portable derived draws. std::mt19937_64 is fully
// specified by the standard; the bounded/unit draws below avoid
// std::uniform_*_distribution, whose output differs across standard
// library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Unbiased draw in [0, bound) by rejection.
  std::uint64_t next_below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("Rng::next_below: bound == 0");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  // Uniform double in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Partial Fisher-Yates: s distinct items drawn uniformly without
  // replacement, in draw order.
  template <typename T>
  std::vector<T> sample_without_replacement(std::vector<T> pool, std::size_t s) {
    if (s > pool.size()) {
      throw std::invalid_argument("sample_without_replacement: s > pool size");
    }
    for (std::size_t i = 0; i < s; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(next_below(pool.size() - i));
      std::swap(pool[i], pool[j]);
    }
    pool.resize(s);
    return pool;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace subsparse
