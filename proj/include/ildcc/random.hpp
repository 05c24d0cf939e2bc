// Copyright 2026 The ILDCC Authors
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

#ifndef ILDCC_RANDOM_HPP_
#define ILDCC_RANDOM_HPP_

#include <cstdint>
#include <initializer_list>
#include <random>

namespace ildcc {

// Thin wrapper over mt19937_64. The standard distributions are
// implementation-defined, so the mappings to doubles and indices are spelled
// out here to keep seeded runs identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform in [0, n). n must be > 0.
  std::size_t index(std::size_t n) {
    // Rejection sampling removes modulo bias.
    const std::uint64_t bound = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return static_cast<std::size_t>(x % bound);
  }

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer; used to derive independent per-trial seeds.
constexpr std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master,
                                 std::initializer_list<std::uint64_t> parts) {
  std::uint64_t s = mix_seed(master);
  for (std::uint64_t p : parts) s = mix_seed(s ^ p);
  return s;
}

}  // namespace ildcc

#endif  // ILDCC_RANDOM_HPP_
