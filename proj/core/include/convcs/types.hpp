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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace convcs {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;
using CSpan = std::span<const cplx>;

/// Euclidean norm of a complex vector.
double norm2(CSpan x);

/// Inner product <x, y> = sum conj(x_i) y_i.
cplx inner(CSpan x, CSpan y);

/// e^{j pi num / den} with num reduced exactly modulo 2*den before the
/// floating-point evaluation.
cplx unit_phase(std::int64_t num, std::int64_t den);

}  // namespace convcs
