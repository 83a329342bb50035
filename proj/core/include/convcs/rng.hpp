// Copyright 2026 The convcs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>

#include "convcs/types.hpp"

namespace convcs {

/// Versioned random stream ("convcs-rng-v1").
///
/// Engine: MT19937-64 exactly as fixed by the C++ standard
/// (std::mt19937_64 seeded with a single 64-bit value). All conversions
/// are done here rather than through <random> distributions, whose outputs
/// are implementation-defined:
///
///   uniform01()        one draw x; returns (x >> 11) * 2^-53, in [0, 1).
///   uniform_below(n)   draws x until x < floor(2^64 / n) * n; returns x % n.
///   coin()             one draw x; returns x >> 63.
///   complex_normal()   two uniform01() draws u1, u2 (in that order);
///                      r = sqrt(-2 ln(1 - u1)), t = 2 pi u2;
///                      returns (r cos t + j r sin t) / sqrt(2), so E|z|^2 = 1.
class Rng {
 public:
  static constexpr const char* kAlgorithm = "convcs-rng-v1/mt19937_64";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  double uniform01();
  std::uint64_t uniform_below(std::uint64_t n);
  int coin() { return static_cast<int>(engine_() >> 63); }
  cplx complex_normal();

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed for sub-stream `index` of `master`: splitmix64(master ^ splitmix64(index + 1)).
/// Stable under changes of the total stream count.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

}  // namespace convcs
