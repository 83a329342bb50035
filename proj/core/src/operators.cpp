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

#include "convcs/operators.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "convcs/fft.hpp"
#include "convcs/rng.hpp"

namespace convcs {
namespace {

constexpr double kUnimodularTol = 1e-12;
constexpr double kRealTol = 1e-10;

void require_size(std::size_t got, std::size_t want, const char* what) {
  if (got != want)
    throw std::invalid_argument(std::string(what) + ": length " + std::to_string(got) +
                                ", expected " + std::to_string(want));
}

void scale_in_place(CVec& v, double s) {
  for (auto& x : v) x *= s;
}

CVec dct2_unitary(CSpan x) {
  // Psi^* x: f_q = w_q sum_p x_p cos(pi (p + 1/2) q / N), via a 2N-point FFT
  // of the even extension [x, reverse(x)].
  const std::size_t n = x.size();
  CVec ext(2 * n);
  for (std::size_t p = 0; p < n; ++p) {
    ext[p] = x[p];
    ext[2 * n - 1 - p] = x[p];
  }
  const CVec y = fft(ext);
  const double w0 = 1.0 / std::sqrt(static_cast<double>(n));
  const double w = std::sqrt(2.0 / static_cast<double>(n));
  CVec out(n);
  for (std::size_t q = 0; q < n; ++q) {
    const cplx c = 0.5 * unit_phase(-static_cast<std::int64_t>(q), 2 * static_cast<std::int64_t>(n)) * y[q];
    out[q] = (q == 0 ? w0 : w) * c;
  }
  return out;
}

CVec idct2_unitary(CSpan f) {
  // Psi f: x_p = sum_q w_q f_q cos(pi (p + 1/2) q / N), via a 2N-point
  // inverse FFT of the two half-sided exponentials.
  const std::size_t n = f.size();
  const auto two_n = 2 * static_cast<std::int64_t>(n);
  const double w0 = 1.0 / std::sqrt(static_cast<double>(n));
  const double w = std::sqrt(2.0 / static_cast<double>(n));
  CVec v(2 * n, cplx{0.0, 0.0});
  for (std::size_t q = 0; q < n; ++q) {
    const cplx c = (q == 0 ? w0 : w) * f[q] * 0.5;
    const auto qi = static_cast<std::int64_t>(q);
    v[q] += c * unit_phase(qi, two_n);
    v[(2 * n - q) % (2 * n)] += c * unit_phase(-qi, two_n);
  }
  CVec x = ifft(v);
  x.resize(n);
  return x;
}

}  // namespace

// ---- CirculantOperator ----

CirculantOperator::CirculantOperator(CVec sigma, CVec a, Origin origin)
    : sigma_(std::move(sigma)), a_(std::move(a)), origin_(origin) {
  real_ = std::all_of(a_.begin(), a_.end(), [](cplx v) { return std::abs(v.imag()) <= kRealTol; });
  unitary_ = std::all_of(sigma_.begin(), sigma_.end(),
                         [](cplx v) { return std::abs(std::abs(v) - 1.0) <= kUnimodularTol; });
}

CirculantOperator CirculantOperator::from_spectrum(CSpan sigma) {
  if (sigma.empty()) throw std::invalid_argument("from_spectrum: empty spectrum");
  for (const auto& v : sigma)
    if (!(std::abs(std::abs(v) - 1.0) <= kUnimodularTol))
      throw std::invalid_argument("from_spectrum: spectrum must be unimodular");
  CVec a = ifft(sigma);
  scale_in_place(a, 1.0 / std::sqrt(static_cast<double>(sigma.size())));
  return CirculantOperator(CVec(sigma.begin(), sigma.end()), std::move(a), Origin::Spectrum);
}

CirculantOperator CirculantOperator::from_spectrum(const Sequence& sigma) {
  CirculantOperator op = from_spectrum(sigma.values());
  op.kind_ = sigma.kind();
  op.params_ = sigma.params();
  return op;
}

CirculantOperator CirculantOperator::from_filter(CSpan a) {
  if (a.empty()) throw std::invalid_argument("from_filter: empty filter");
  CVec sigma = fft(a);
  scale_in_place(sigma, 1.0 / std::sqrt(static_cast<double>(a.size())));
  return CirculantOperator(std::move(sigma), CVec(a.begin(), a.end()), Origin::Filter);
}

CirculantOperator CirculantOperator::from_filter(const Sequence& a) {
  CirculantOperator op = from_filter(a.values());
  op.kind_ = a.kind();
  op.params_ = a.params();
  return op;
}

CVec CirculantOperator::apply(CSpan x) const {
  require_size(x.size(), size(), "CirculantOperator::apply");
  CVec z = fft(x);
  for (std::size_t k = 0; k < z.size(); ++k) z[k] *= sigma_[k];
  CVec y = ifft(z);
  scale_in_place(y, 1.0 / std::sqrt(static_cast<double>(size())));
  return y;
}

CVec CirculantOperator::adjoint(CSpan x) const {
  require_size(x.size(), size(), "CirculantOperator::adjoint");
  CVec z = fft(x);
  for (std::size_t k = 0; k < z.size(); ++k) z[k] *= std::conj(sigma_[k]);
  CVec y = ifft(z);
  scale_in_place(y, 1.0 / std::sqrt(static_cast<double>(size())));
  return y;
}

std::vector<double> CirculantOperator::apply_real(std::span<const double> x) const {
  if (!real_) throw std::logic_error("apply_real: operator filter is not real");
  CVec xc(x.begin(), x.end());
  const CVec y = apply(xc);
  double peak = 1.0;
  for (const auto& v : y) peak = std::max(peak, std::abs(v));
  std::vector<double> out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (std::abs(y[i].imag()) > kRealTol * peak)
      throw std::runtime_error("apply_real: imaginary residue above tolerance");
    out[i] = y[i].real();
  }
  return out;
}

// ---- SamplingSet ----

std::string_view to_string(SamplingMode mode) {
  return mode == SamplingMode::RandomUniform ? "random" : "deterministic";
}

SamplingSet::SamplingSet(std::size_t n, std::vector<std::size_t> idx, SamplingMode mode,
                         std::optional<std::uint64_t> seed)
    : n_(n), idx_(std::move(idx)), mode_(mode), seed_(seed) {
  if (idx_.empty()) throw std::invalid_argument("SamplingSet: M must be at least 1");
  if (idx_.size() > n_) throw std::invalid_argument("SamplingSet: M exceeds N");
  std::sort(idx_.begin(), idx_.end());
  if (std::adjacent_find(idx_.begin(), idx_.end()) != idx_.end())
    throw std::invalid_argument("SamplingSet: duplicate index");
  if (idx_.back() >= n_) throw std::invalid_argument("SamplingSet: index out of range");
}

SamplingSet SamplingSet::random(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (m > n) throw std::invalid_argument("random_sampling: M exceeds N");
  if (m == 0) throw std::invalid_argument("random_sampling: M must be at least 1");
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  Rng rng(seed);
  for (std::size_t i = 0; i < m; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.uniform_below(n - i));
    std::swap(perm[i], perm[j]);
  }
  perm.resize(m);
  return SamplingSet(n, std::move(perm), SamplingMode::RandomUniform, seed);
}

SamplingSet SamplingSet::deterministic(std::size_t n, std::vector<std::size_t> indices) {
  return SamplingSet(n, std::move(indices), SamplingMode::Deterministic, std::nullopt);
}

SamplingSet SamplingSet::stride(std::size_t n, std::size_t m) {
  if (m == 0 || m > n) throw std::invalid_argument("stride_sampling: need 1 <= M <= N");
  std::vector<std::size_t> idx(m);
  for (std::size_t i = 0; i < m; ++i) idx[i] = i * n / m;
  return SamplingSet(n, std::move(idx), SamplingMode::Deterministic, std::nullopt);
}

// ---- Basis ----

std::string_view to_string(BasisKind kind) {
  switch (kind) {
    case BasisKind::Identity: return "identity";
    case BasisKind::InverseFourier: return "fourier";
    case BasisKind::InverseDCT2: return "dct";
  }
  return "?";
}

BasisKind basis_kind_from_string(std::string_view name) {
  std::string key;
  for (char c : name)
    if (c != '-' && c != '_') key += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (key == "identity" || key == "i" || key == "time") return BasisKind::Identity;
  if (key == "fourier" || key == "inversefourier" || key == "idft") return BasisKind::InverseFourier;
  if (key == "dct" || key == "inversedct2" || key == "idct") return BasisKind::InverseDCT2;
  throw std::invalid_argument("unknown basis: " + std::string(name));
}

CVec basis_apply(BasisKind kind, CSpan f) {
  switch (kind) {
    case BasisKind::Identity: return CVec(f.begin(), f.end());
    case BasisKind::InverseFourier: {
      CVec x = ifft(f);
      scale_in_place(x, 1.0 / std::sqrt(static_cast<double>(f.size())));
      return x;
    }
    case BasisKind::InverseDCT2: return idct2_unitary(f);
  }
  return {};
}

CVec basis_adjoint(BasisKind kind, CSpan x) {
  switch (kind) {
    case BasisKind::Identity: return CVec(x.begin(), x.end());
    case BasisKind::InverseFourier: {
      CVec f = fft(x);
      scale_in_place(f, 1.0 / std::sqrt(static_cast<double>(x.size())));
      return f;
    }
    case BasisKind::InverseDCT2: return dct2_unitary(x);
  }
  return {};
}

Matrix basis_dense(BasisKind kind, std::size_t n) {
  if (n == 0 || n > kDenseGuard) throw std::invalid_argument("basis_dense: N outside [1, 4096]");
  const auto nn = static_cast<Eigen::Index>(n);
  Matrix m(nn, nn);
  const double rn = std::sqrt(static_cast<double>(n));
  switch (kind) {
    case BasisKind::Identity:
      m.setIdentity();
      break;
    case BasisKind::InverseFourier:
      for (Eigen::Index p = 0; p < nn; ++p)
        for (Eigen::Index q = 0; q < nn; ++q)
          m(p, q) = unit_phase(2 * ((p * q) % nn), nn) / rn;
      break;
    case BasisKind::InverseDCT2: {
      const double pi = std::acos(-1.0);
      for (Eigen::Index p = 0; p < nn; ++p) {
        m(p, 0) = 1.0 / rn;
        for (Eigen::Index q = 1; q < nn; ++q)
          m(p, q) = std::sqrt(2.0 / static_cast<double>(n)) *
                    std::cos(pi / static_cast<double>(n) * (static_cast<double>(p) + 0.5) *
                             static_cast<double>(q));
      }
      break;
    }
  }
  return m;
}

// ---- LinearOperator family ----

CVec LinearOperator::column(std::size_t j) const {
  if (j >= cols()) throw std::out_of_range("column index out of range");
  CVec e(cols(), cplx{0.0, 0.0});
  e[j] = 1.0;
  return forward(e);
}

SensingOperator::SensingOperator(CirculantOperator a, SamplingSet omega, BasisKind basis)
    : a_(std::move(a)), omega_(std::move(omega)), basis_(basis) {
  if (omega_.n() != a_.size())
    throw std::invalid_argument("SensingOperator: sampling set and operator sizes differ");
  scale_ = 1.0 / std::sqrt(static_cast<double>(omega_.m()));
}

CVec SensingOperator::forward(CSpan f) const {
  require_size(f.size(), cols(), "sensing_forward");
  const CVec z = a_.apply(basis_apply(basis_, f));
  CVec y(rows());
  const auto& idx = omega_.indices();
  for (std::size_t i = 0; i < idx.size(); ++i) y[i] = z[idx[i]] * scale_;
  return y;
}

CVec SensingOperator::adjoint(CSpan y) const {
  require_size(y.size(), rows(), "sensing_adjoint");
  CVec z(cols(), cplx{0.0, 0.0});
  const auto& idx = omega_.indices();
  for (std::size_t i = 0; i < idx.size(); ++i) z[idx[i]] = y[i] * scale_;
  return basis_adjoint(basis_, a_.adjoint(z));
}

CVec SensingOperator::column(std::size_t j) const {
  const std::size_t n = cols();
  if (j >= n) throw std::out_of_range("column index out of range");
  const auto& idx = omega_.indices();
  CVec c(rows());
  switch (basis_) {
    case BasisKind::Identity: {
      // A e_j is the filter cyclically shifted by j.
      const CSpan a = a_.filter();
      for (std::size_t i = 0; i < idx.size(); ++i) c[i] = a[(idx[i] + n - j) % n] * scale_;
      return c;
    }
    case BasisKind::InverseFourier: {
      // Fourier modes are eigenvectors: A Psi e_j = sigma_j exp(2 pi j p j / N).
      const cplx s = a_.spectrum()[j] * scale_;
      const auto nn = static_cast<std::int64_t>(n);
      for (std::size_t i = 0; i < idx.size(); ++i)
        c[i] = s * unit_phase(2 * static_cast<std::int64_t>((idx[i] * j) % n), nn);
      return c;
    }
    case BasisKind::InverseDCT2: break;
  }
  return LinearOperator::column(j);
}

CVec DenseOperator::forward(CSpan f) const {
  require_size(f.size(), cols(), "DenseOperator::forward");
  const Eigen::Map<const Eigen::VectorXcd> x(f.data(), static_cast<Eigen::Index>(f.size()));
  const Eigen::VectorXcd y = m_ * x;
  return CVec(y.data(), y.data() + y.size());
}

CVec DenseOperator::adjoint(CSpan y) const {
  require_size(y.size(), rows(), "DenseOperator::adjoint");
  const Eigen::Map<const Eigen::VectorXcd> v(y.data(), static_cast<Eigen::Index>(y.size()));
  const Eigen::VectorXcd f = m_.adjoint() * v;
  return CVec(f.data(), f.data() + f.size());
}

CVec DenseOperator::column(std::size_t j) const {
  if (j >= cols()) throw std::out_of_range("column index out of range");
  const auto col = m_.col(static_cast<Eigen::Index>(j));
  return CVec(col.data(), col.data() + col.size());
}

Matrix materialize_dense(const CirculantOperator& a) {
  const std::size_t n = a.size();
  if (n > kDenseGuard) throw std::length_error("materialize_dense: N exceeds 4096");
  const auto nn = static_cast<Eigen::Index>(n);
  Matrix m(nn, nn);
  const CSpan f = a.filter();
  for (Eigen::Index p = 0; p < nn; ++p)
    for (Eigen::Index q = 0; q < nn; ++q) m(p, q) = f[static_cast<std::size_t>((p - q + nn) % nn)];
  return m;
}

Matrix materialize_dense(const LinearOperator& op) {
  if (op.cols() > kDenseGuard) throw std::length_error("materialize_dense: N exceeds 4096");
  Matrix m(static_cast<Eigen::Index>(op.rows()), static_cast<Eigen::Index>(op.cols()));
  for (std::size_t j = 0; j < op.cols(); ++j) {
    const CVec c = op.forward([&] {
      CVec e(op.cols(), cplx{0.0, 0.0});
      e[j] = 1.0;
      return e;
    }());
    for (std::size_t i = 0; i < c.size(); ++i)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = c[i];
  }
  return m;
}

}  // namespace convcs
