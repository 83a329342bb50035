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

#include "convcs/types.hpp"

#include <cmath>
#include <numbers>

namespace convcs {

double norm2(CSpan x) {
  double s = 0.0;
  for (const auto& v : x) s += std::norm(v);
  return std::sqrt(s);
}

cplx inner(CSpan x, CSpan y) {
  cplx s{0.0, 0.0};
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) s += std::conj(x[i]) * y[i];
  return s;
}

cplx unit_phase(std::int64_t num, std::int64_t den) {
  const std::int64_t period = 2 * den;
  std::int64_t r = num % period;
  if (r < 0) r += period;
  // Map to (-den, den] so the angle stays in (-pi, pi].
  if (r > den) r -= period;
  if (r == 0) return {1.0, 0.0};
  if (r == den) return {-1.0, 0.0};
  if (2 * r == den) return {0.0, 1.0};
  if (2 * r == -den) return {0.0, -1.0};
  const double angle = std::numbers::pi * static_cast<double>(r) / static_cast<double>(den);
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace convcs
