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

#include "convcs/gauss_sums.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "convcs/csv.hpp"

namespace convcs {
namespace {

// Neumaier compensated accumulator for one real component.
struct Compensated {
  double sum = 0.0;
  double c = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) c += (sum - t) + x;
    else c += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + c; }
};

struct ComplexAccumulator {
  Compensated re, im;
  void add(cplx z) {
    re.add(z.real());
    im.add(z.imag());
  }
  cplx value() const { return {re.value(), im.value()}; }
};

// exp(j phi(k)) for the kind, reduced exactly before evaluation.
cplx term(GaussKind kind, std::int64_t n, std::int64_t k) {
  switch (kind) {
    case GaussKind::G_N: {
      const std::int64_t r = (k % n) * (k % n) % n;  // 2 pi r / N
      return unit_phase(2 * r, n);
    }
    case GaussKind::G_2N: {
      const std::int64_t p = 2 * n;
      const std::int64_t r = (k % p) * (k % p) % p;
      return unit_phase(r, n);
    }
    case GaussKind::G_8N: {
      const std::int64_t p = 8 * n;
      const std::int64_t r = (k % p) * (k % p) % p;
      return unit_phase(r, 4 * n);
    }
    case GaussKind::Q_N: {
      const std::int64_t p = 8 * n;
      const std::int64_t o = (2 * k + 1) % p;
      return unit_phase(o * o % p, 4 * n);
    }
  }
  return {};
}

void check_n(std::int64_t n) {
  if (n < 1) throw std::out_of_range("gauss sum: N must be positive");
  if (n > (std::int64_t{1} << 26)) throw std::out_of_range("gauss sum: N too large");
}

}  // namespace

std::string_view to_string(GaussKind kind) {
  switch (kind) {
    case GaussKind::G_N: return "G_N";
    case GaussKind::G_2N: return "G_2N";
    case GaussKind::G_8N: return "G_8N";
    case GaussKind::Q_N: return "Q_N";
  }
  return "?";
}

std::int64_t gauss_domain_limit(GaussKind kind, std::int64_t n) {
  switch (kind) {
    case GaussKind::G_N: return n;
    case GaussKind::G_2N: return 2 * n;
    case GaussKind::G_8N: return 8 * n;
    case GaussKind::Q_N: return n;
  }
  return 0;
}

cplx gauss_sum(const GaussSumQuery& q) { return gauss_sum(q.kind, q.n, q.m); }

cplx gauss_sum(GaussKind kind, std::int64_t n, std::int64_t m) {
  check_n(n);
  if (m < 0 || m > gauss_domain_limit(kind, n))
    throw std::out_of_range("gauss_sum: m outside the domain of " + std::string(to_string(kind)));
  ComplexAccumulator acc;
  for (std::int64_t k = 0; k < m; ++k) acc.add(term(kind, n, k));
  return acc.value();
}

CVec gauss_prefix_sums(GaussKind kind, std::int64_t n, std::int64_t limit) {
  check_n(n);
  if (limit < 0 || limit > gauss_domain_limit(kind, n))
    throw std::out_of_range("gauss_prefix_sums: limit outside the domain");
  CVec out(static_cast<std::size_t>(limit) + 1);
  ComplexAccumulator acc;
  out[0] = 0.0;
  for (std::int64_t k = 0; k < limit; ++k) {
    acc.add(term(kind, n, k));
    out[static_cast<std::size_t>(k) + 1] = acc.value();
  }
  return out;
}

cplx complete_gauss_closed_form(std::int64_t n) {
  check_n(n);
  const double r = std::sqrt(static_cast<double>(n));
  switch (n % 4) {
    case 0: return {r, r};
    case 1: return {r, 0.0};
    case 2: return {0.0, 0.0};
    default: return {0.0, r};
  }
}

double reflection_identity_residual(std::int64_t n, std::int64_t m) {
  check_n(n);
  if (m < 1 || 2 * m > n + 1)
    throw std::out_of_range("reflection_identity_residual: need 1 <= m <= (N+1)/2");
  const cplx lhs = gauss_sum(GaussKind::G_N, n, m) + gauss_sum(GaussKind::G_N, n, n - m + 1);
  return std::abs(lhs - 1.0 - gauss_sum(GaussKind::G_N, n, n));
}

double q_identity_residual(std::int64_t n, std::int64_t m) {
  check_n(n);
  if (m < 0 || m > n) throw std::out_of_range("q_identity_residual: need 0 <= m <= N");
  const cplx rhs = gauss_sum(GaussKind::G_8N, n, 2 * m) - gauss_sum(GaussKind::G_2N, n, m);
  return std::abs(gauss_sum(GaussKind::Q_N, n, m) - rhs);
}

std::string_view to_string(BoundFamily family) {
  switch (family) {
    case BoundFamily::NormalizedGN: return "g_N";
    case BoundFamily::G2N: return "G_2N";
    case BoundFamily::QN: return "Q_N";
  }
  return "?";
}

std::size_t BoundReport::violations() const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const BoundRow& r) { return !r.pass(); }));
}

std::size_t BoundReport::violations(std::string_view kind) const {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [&](const BoundRow& r) {
    return r.kind == kind && !r.pass();
  }));
}

namespace {

// Max of scale * |prefix[m]| over m in [lo, hi].
BoundRow worst(const CVec& prefix, std::int64_t lo, std::int64_t hi, double scale) {
  BoundRow row;
  row.worst_m = lo;
  row.observed = -1.0;
  for (std::int64_t m = lo; m <= hi; ++m) {
    const double v = scale * std::abs(prefix[static_cast<std::size_t>(m)]);
    if (v > row.observed) {
      row.observed = v;
      row.worst_m = m;
    }
  }
  return row;
}

BoundRow finish(BoundRow row, std::string kind, std::int64_t n, double bound, bool enforced = true) {
  row.kind = std::move(kind);
  row.n = n;
  row.bound = bound;
  row.margin = bound - row.observed;
  row.enforced = enforced;
  return row;
}

void normalized_gn(BoundReport& rep, std::int64_t n) {
  if (n < 4) return;
  const double rn = std::sqrt(static_cast<double>(n));
  const CVec pre = gauss_prefix_sums(GaussKind::G_N, n, n);
  const double scale = 2.0 / rn;
  switch (n % 4) {
    case 0:
      rep.rows.push_back(finish(worst(pre, 0, n / 2, scale), "g_N:4k", n, std::sqrt(2.0)));
      break;
    case 1:
      // bound completed once the constant is fitted
      rep.rows.push_back(finish(worst(pre, 0, (n - 1) / 2, scale), "g_N:4k+1", n, 1.07, false));
      break;
    case 2:
      rep.rows.push_back(finish(worst(pre, 0, n, scale), "g_N:4k+2", n, 0.95 + 101.0 / 40.0 / rn));
      break;
    default:
      rep.rows.push_back(
          finish(worst(pre, 0, (n - 1) / 2, scale), "g_N:4k+3", n, std::sqrt(1.0 + 1.0 / n)));
      break;
  }
}

void g2n(BoundReport& rep, std::int64_t n) {
  if (n < 2) return;
  const double rn = std::sqrt(static_cast<double>(n));
  const CVec pre = gauss_prefix_sums(GaussKind::G_2N, n, 2 * n);
  if (n % 2 == 0) {
    rep.rows.push_back(finish(worst(pre, 0, n, 1.0), "G_2N:even:m<=N", n, rn));
    const BoundRow upper = worst(pre, n + 1, 2 * n, 1.0);
    rep.rows.push_back(finish(upper, "G_2N:even:N<m<=2N", n, 3.0 * rn + 1.0));
    rep.rows.push_back(finish(upper, "G_2N:even:N<m<=2N:2sqrtN+1:info", n, 2.0 * rn + 1.0, false));
  } else {
    const double b = std::sqrt(2.0 * n) / 2.0 * (0.95 + 101.0 / 40.0 / rn);
    rep.rows.push_back(finish(worst(pre, 0, 2 * n, 1.0), "G_2N:odd", n, b));
  }
}

void qn(BoundReport& rep, std::int64_t n) {
  const CVec pre = gauss_prefix_sums(GaussKind::Q_N, n, n);
  rep.rows.push_back(finish(worst(pre, 0, n, 1.0), "Q_N", n, 3.0 * std::sqrt(static_cast<double>(n))));
}

}  // namespace

BoundReport bound_check(BoundFamily family, std::int64_t n_lo, std::int64_t n_hi) {
  BoundReport rep;
  rep.family = family;
  for (std::int64_t n = std::max<std::int64_t>(n_lo, 1); n <= n_hi; ++n) {
    switch (family) {
      case BoundFamily::NormalizedGN: normalized_gn(rep, n); break;
      case BoundFamily::G2N: g2n(rep, n); break;
      case BoundFamily::QN: qn(rep, n); break;
    }
  }
  if (family == BoundFamily::NormalizedGN) {
    double c = 0.0;
    bool any = false;
    for (const auto& r : rep.rows) {
      if (r.kind != "g_N:4k+1") continue;
      any = true;
      c = std::max(c, (r.observed - 1.07) * std::sqrt(static_cast<double>(r.n)));
    }
    if (any) {
      rep.fitted_c = c;
      for (auto& r : rep.rows) {
        if (r.kind != "g_N:4k+1") continue;
        r.bound = 1.07 + c / std::sqrt(static_cast<double>(r.n));
        r.margin = r.bound - r.observed;
      }
    }
  }
  return rep;
}

void write_bound_csv(std::ostream& os, const std::vector<BoundRow>& rows, bool header) {
  if (header) os << "kind,N,worst_m,observed,bound,margin\n";
  for (const auto& r : rows)
    os << r.kind << ',' << r.n << ',' << r.worst_m << ',' << format_double(r.observed) << ','
       << format_double(r.bound) << ',' << format_double(r.margin) << '\n';
}

}  // namespace convcs
