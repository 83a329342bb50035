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

#include <benchmark/benchmark.h>

#include "convcs/coherence.hpp"
#include "convcs/recovery.hpp"
#include "convcs/rng.hpp"

using namespace convcs;

namespace {

CVec noise(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  CVec v(n);
  for (auto& x : v) x = rng.complex_normal();
  return v;
}

void BM_CirculantApply(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto a = CirculantOperator::from_spectrum(fzc(n, 1));
  const CVec x = noise(n, 1);
  for (auto _ : st) benchmark::DoNotOptimize(a.apply(x));
  st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_CirculantApply)->RangeMultiplier(4)->Range(256, 65536)->Complexity(benchmark::oNLogN);

void BM_SensingForward(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto basis = static_cast<BasisKind>(st.range(1));
  const SensingOperator op(CirculantOperator::from_spectrum(golay(n)), SamplingSet::random(n, n / 16, 1), basis);
  const CVec f = noise(n, 2);
  for (auto _ : st) benchmark::DoNotOptimize(op.forward(f));
}
BENCHMARK(BM_SensingForward)->ArgsProduct({{1024, 16384}, {0, 1, 2}});

void BM_SubspacePursuit(benchmark::State& st) {
  const std::size_t n = 1024, m = 64, k = static_cast<std::size_t>(st.range(0));
  const SensingOperator op(CirculantOperator::from_spectrum(golay(n)), SamplingSet::random(n, m, 3),
                           BasisKind::Identity);
  CVec f(n, 0.0);
  for (std::size_t i = 0; i < k; ++i) f[(i * 131 + 7) % n] = 1.0;
  const CVec y = op.forward(f);
  for (auto _ : st) benchmark::DoNotOptimize(subspace_pursuit(op, y, k));
}
BENCHMARK(BM_SubspacePursuit)->Arg(4)->Arg(8)->Arg(16);

void BM_MutualCoherenceDct(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto a = CirculantOperator::from_spectrum(fzc(n, 1));
  for (auto _ : st) benchmark::DoNotOptimize(mutual_coherence(a, BasisKind::InverseDCT2));
}
BENCHMARK(BM_MutualCoherenceDct)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
