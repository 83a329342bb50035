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

// Brute-force reference implementations. They share nothing with the library
// beyond the basic complex types, and favour obviousness over speed.

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cplx = std::complex<double>;
using lcplx = std::complex<long double>;
using CVec = std::vector<cplx>;

inline constexpr long double kPi = 3.141592653589793238462643383279502884L;

inline lcplx expj(long double theta) { return {std::cos(theta), std::sin(theta)}; }

/// F(p, q) = exp(-2 pi j p q / N), summed in long double.
inline CVec dft(const CVec& x) {
  const std::size_t n = x.size();
  CVec out(n);
  for (std::size_t p = 0; p < n; ++p) {
    lcplx acc = 0;
    for (std::size_t q = 0; q < n; ++q)
      acc += lcplx(x[q]) * expj(-2.0L * kPi * static_cast<long double>((p * q) % n) / n);
    out[p] = cplx(acc);
  }
  return out;
}

/// F^* x (no 1/N).
inline CVec idft(const CVec& x) {
  const std::size_t n = x.size();
  CVec out(n);
  for (std::size_t p = 0; p < n; ++p) {
    lcplx acc = 0;
    for (std::size_t q = 0; q < n; ++q)
      acc += lcplx(x[q]) * expj(2.0L * kPi * static_cast<long double>((p * q) % n) / n);
    out[p] = cplx(acc);
  }
  return out;
}

inline Eigen::MatrixXcd dft_matrix(std::size_t n) {
  Eigen::MatrixXcd f(n, n);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      f(p, q) = cplx(expj(-2.0L * kPi * static_cast<long double>((p * q) % n) / n));
  return f;
}

/// sum_k s_k conj(s_{(k+l) mod N}).
inline cplx periodic_autocorr(const CVec& s, std::size_t l) {
  cplx acc = 0;
  for (std::size_t k = 0; k < s.size(); ++k) acc += s[k] * std::conj(s[(k + l) % s.size()]);
  return acc;
}

/// sum_{k < N-l} s_k conj(s_{k+l}).
inline cplx aperiodic_autocorr(const CVec& s, std::size_t l) {
  cplx acc = 0;
  for (std::size_t k = 0; k + l < s.size(); ++k) acc += s[k] * std::conj(s[k + l]);
  return acc;
}

inline long long aperiodic_int(const std::vector<int>& s, std::size_t l) {
  long long acc = 0;
  for (std::size_t k = 0; k + l < s.size(); ++k) acc += static_cast<long long>(s[k]) * s[k + l];
  return acc;
}

/// Dense circulant with first column a: A(p, q) = a_{(p - q) mod N}.
inline Eigen::MatrixXcd circulant(const CVec& a) {
  const std::size_t n = a.size();
  Eigen::MatrixXcd m(n, n);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) m(p, q) = a[(p + n - q) % n];
  return m;
}

/// sum_{k<m} exp(j * 2 pi * num(k) / den) with num(k) given exactly, in long double.
template <class Phase>
inline cplx quad_sum(std::int64_t m, Phase phase_turns) {
  lcplx acc = 0;
  for (std::int64_t k = 0; k < m; ++k) acc += expj(2.0L * kPi * phase_turns(k));
  return cplx(acc);
}

/// G_N(m) = sum exp(j 2 pi k^2 / N).
inline cplx gauss_gn(std::int64_t n, std::int64_t m) {
  return quad_sum(m, [n](std::int64_t k) { return static_cast<long double>((k * k) % n) / n; });
}

/// sum exp(j pi k^2 / N).
inline cplx gauss_g2n(std::int64_t n, std::int64_t m) {
  return quad_sum(m, [n](std::int64_t k) { return static_cast<long double>((k * k) % (2 * n)) / (2 * n); });
}

/// sum exp(j pi k^2 / (4N)).
inline cplx gauss_g8n(std::int64_t n, std::int64_t m) {
  return quad_sum(m, [n](std::int64_t k) { return static_cast<long double>((k * k) % (8 * n)) / (8 * n); });
}

/// sum exp(j pi (k + 1/2)^2 / N).
inline cplx gauss_qn(std::int64_t n, std::int64_t m) {
  return quad_sum(m, [n](std::int64_t k) {
    const std::int64_t o = 2 * k + 1;
    return static_cast<long double>((o * o) % (8 * n)) / (8 * n);
  });
}

/// Unitary DCT-III (inverse DCT-II) matrix written out from its entries.
inline Eigen::MatrixXcd idct_matrix(std::size_t n) {
  Eigen::MatrixXcd m(n, n);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) {
      const long double w = q == 0 ? std::sqrt(1.0L / n) : std::sqrt(2.0L / n);
      m(p, q) = static_cast<double>(w * std::cos(kPi / n * (p + 0.5L) * q));
    }
  return m;
}

/// Fibonacci LFSR written bit by bit: u_{t+d} = sum_i c_i u_{t+i} mod 2.
inline std::vector<int> lfsr_bits(int degree, std::uint32_t taps, std::uint32_t init, std::size_t count) {
  std::vector<int> u(count + degree);
  for (int i = 0; i < degree; ++i) u[i] = (init >> i) & 1;
  for (std::size_t t = 0; t + degree < u.size(); ++t) {
    int b = 0;
    for (int i = 0; i < degree; ++i)
      if ((taps >> i) & 1) b ^= u[t + i];
    u[t + degree] = b;
  }
  u.resize(count);
  return u;
}

inline double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

inline double rel_diff(const CVec& a, const CVec& b) {
  double num = 0, den = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::norm(a[i] - b[i]);
    den += std::norm(b[i]);
  }
  return den == 0 ? std::sqrt(num) : std::sqrt(num / den);
}

inline CVec to_vec(const Eigen::VectorXcd& v) { return CVec(v.data(), v.data() + v.size()); }

inline Eigen::VectorXcd to_eigen(const CVec& v) {
  return Eigen::Map<const Eigen::VectorXcd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace oracle
