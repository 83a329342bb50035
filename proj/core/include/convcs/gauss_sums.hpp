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
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "convcs/types.hpp"

namespace convcs {

/// Quadratic exponential sums, all of the form sum_{k<m} exp(j phi(k)):
///   G_N   phi = 2 pi k^2 / N           0 <= m <= N
///   G_2N  phi = pi k^2 / N             0 <= m <= 2N
///   G_8N  phi = pi k^2 / (4N)          0 <= m <= 8N
///   Q_N   phi = pi (2k+1)^2 / (4N)     0 <= m <= N
/// In every case N is the parameter passed in, not the modulus.
enum class GaussKind { G_N, G_2N, G_8N, Q_N };

std::string_view to_string(GaussKind kind);

struct GaussSumQuery {
  GaussKind kind = GaussKind::G_N;
  std::int64_t n = 1;
  std::int64_t m = 0;
};

/// Largest admissible m for the kind.
std::int64_t gauss_domain_limit(GaussKind kind, std::int64_t n);

/// Direct partial sum with exact phase reduction and Neumaier summation.
/// Throws std::out_of_range when m is outside [0, gauss_domain_limit].
cplx gauss_sum(const GaussSumQuery& q);
cplx gauss_sum(GaussKind kind, std::int64_t n, std::int64_t m);

/// All prefixes: result[m] = gauss_sum(kind, n, m) for m = 0..limit.
CVec gauss_prefix_sums(GaussKind kind, std::int64_t n, std::int64_t limit);

/// Closed form of the complete sum G_N(N) by N mod 4.
cplx complete_gauss_closed_form(std::int64_t n);

/// |G_N(m) + G_N(N-m+1) - 1 - G_N(N)|, for 1 <= m <= (N+1)/2.
double reflection_identity_residual(std::int64_t n, std::int64_t m);

/// |Q_N(m) - (G_8N(2m) - G_2N(m))|, for 0 <= m <= N.
double q_identity_residual(std::int64_t n, std::int64_t m);

enum class BoundFamily {
  NormalizedGN,  // |2 G_N(m) / sqrt(N)|, four cases by N mod 4
  G2N,           // |G_2N(m)|, even N lower/upper half and odd N
  QN,            // |Q_N(m)| <= 3 sqrt(N)
};

std::string_view to_string(BoundFamily family);

/// Worst case of one bound at one N.
struct BoundRow {
  std::string kind;       // case label, e.g. "g_N:4k+3"
  std::int64_t n = 0;
  std::int64_t worst_m = 0;
  double observed = 0.0;
  double bound = 0.0;
  double margin = 0.0;    // bound - observed
  bool enforced = true;   // informational rows never count as violations
  bool pass() const { return !enforced || observed <= bound + 1e-9; }
};

struct BoundReport {
  BoundFamily family = BoundFamily::NormalizedGN;
  std::vector<BoundRow> rows;
  /// For the N = 4k+1 case: smallest c with observed <= 1.07 + c / sqrt(N)
  /// over the sweep. That case's rows use this c and are not enforced.
  std::optional<double> fitted_c;

  std::size_t violations() const;
  /// Violations restricted to rows whose kind equals `kind`.
  std::size_t violations(std::string_view kind) const;
};

/// Exhaustive sweep over N in [n_lo, n_hi] and every admissible m of each case.
/// Values of N that belong to no case of the family are skipped.
BoundReport bound_check(BoundFamily family, std::int64_t n_lo, std::int64_t n_hi);

/// CSV with header kind,N,worst_m,observed,bound,margin.
void write_bound_csv(std::ostream& os, const std::vector<BoundRow>& rows, bool header = true);

}  // namespace convcs
