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

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "convcs/fft.hpp"
#include "convcs/operators.hpp"
#include "convcs/rng.hpp"
#include "oracles.hpp"

using namespace convcs;

namespace {

CVec random_vec(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  CVec v(n);
  for (auto& x : v) x = rng.complex_normal();
  return v;
}

Eigen::MatrixXcd oracle_basis(BasisKind kind, std::size_t n) {
  switch (kind) {
    case BasisKind::Identity: return Eigen::MatrixXcd::Identity(n, n);
    case BasisKind::InverseFourier: return oracle::dft_matrix(n).adjoint() / std::sqrt(double(n));
    case BasisKind::InverseDCT2: return oracle::idct_matrix(n);
  }
  return {};
}

/// (1/sqrt(M)) R_Omega C(a) Psi written out densely.
Eigen::MatrixXcd oracle_theta(const CirculantOperator& a, const SamplingSet& om, BasisKind basis) {
  const oracle::CVec filt(a.filter().begin(), a.filter().end());
  const Eigen::MatrixXcd full = oracle::circulant(filt) * oracle_basis(basis, a.size());
  Eigen::MatrixXcd t(om.m(), a.size());
  for (std::size_t i = 0; i < om.m(); ++i) t.row(i) = full.row(om.indices()[i]);
  return t / std::sqrt(double(om.m()));
}

}  // namespace

TEST(Fft, MatchesOracle) {
  for (std::size_t n : {1u, 2u, 7u, 16u, 45u, 128u}) {
    const CVec x = random_vec(n, n);
    EXPECT_LT(oracle::rel_diff(fft(x), oracle::dft(x)), 1e-12);
    EXPECT_LT(oracle::rel_diff(ifft(x), oracle::idft(x)), 1e-12);
  }
}

TEST(Circulant, SpectrumAndFilterAreConsistent) {
  const Sequence g = fzc(32, 3);
  const auto a = CirculantOperator::from_spectrum(g);
  const oracle::CVec sig(g.values().begin(), g.values().end());
  oracle::CVec filt = oracle::idft(sig);
  for (auto& v : filt) v /= std::sqrt(32.0);
  EXPECT_LT(oracle::rel_diff(CVec(a.filter().begin(), a.filter().end()), filt), 1e-12);
  EXPECT_TRUE(a.unitary());
  EXPECT_EQ(a.origin(), CirculantOperator::Origin::Spectrum);
  EXPECT_EQ(a.source_kind(), SequenceKind::FZC);
  EXPECT_EQ(a.source_params().gamma, 3);
}

TEST(Circulant, FromFilterRoundTrip) {
  const Sequence m = m_sequence(5);
  const auto a = CirculantOperator::from_filter(m);
  EXPECT_EQ(a.origin(), CirculantOperator::Origin::Filter);
  EXPECT_TRUE(a.real_flag());
  oracle::CVec sig = oracle::dft(oracle::CVec(m.values().begin(), m.values().end()));
  for (auto& v : sig) v /= std::sqrt(31.0);
  EXPECT_LT(oracle::rel_diff(CVec(a.spectrum().begin(), a.spectrum().end()), sig), 1e-12);
  EXPECT_FALSE(a.unitary());
}

TEST(Circulant, RejectsNonUnimodularSpectrum) {
  const CVec bad{1.0, 0.5, 1.0};
  EXPECT_THROW(CirculantOperator::from_spectrum(bad), std::invalid_argument);
  EXPECT_THROW(CirculantOperator::from_spectrum(CVec{}), std::invalid_argument);
}

TEST(Circulant, ApplyMatchesDenseOracle) {
  for (std::size_t n : {5u, 16u, 63u, 100u}) {
    const auto a = CirculantOperator::from_spectrum(random_phase(n, n));
    const oracle::CVec filt(a.filter().begin(), a.filter().end());
    const Eigen::MatrixXcd c = oracle::circulant(filt);
    const CVec x = random_vec(n, 99);
    EXPECT_LT(oracle::rel_diff(a.apply(x), oracle::to_vec(c * oracle::to_eigen(x))), 1e-12);
    EXPECT_LT(oracle::rel_diff(a.adjoint(x), oracle::to_vec(c.adjoint() * oracle::to_eigen(x))), 1e-12);
    EXPECT_LT(oracle::max_abs(materialize_dense(a) - c), 1e-12);
  }
}

TEST(Circulant, UnitarySpectrumGivesScaledIsometry) {
  const auto a = CirculantOperator::from_spectrum(fzc(64, 1));
  const Matrix d = materialize_dense(a);
  EXPECT_LT(oracle::max_abs(d.adjoint() * d - 64.0 * Matrix::Identity(64, 64)), 1e-10);
}

TEST(Circulant, ApplyRealForRealFilter) {
  const auto a = CirculantOperator::from_spectrum(extended_golay(20));
  ASSERT_TRUE(a.real_flag());
  std::vector<double> x(20);
  std::iota(x.begin(), x.end(), -3.0);
  const auto y = a.apply_real(x);
  const CVec yc = a.apply(CVec(x.begin(), x.end()));
  for (std::size_t i = 0; i < 20; ++i) EXPECT_NEAR(y[i], yc[i].real(), 1e-12);
  const auto complex_filter = CirculantOperator::from_spectrum(fzc(20, 1));
  EXPECT_THROW(complex_filter.apply_real(x), std::logic_error);
}

TEST(Circulant, SizeMismatchThrows) {
  const auto a = CirculantOperator::from_spectrum(fzc(8, 1));
  EXPECT_THROW(a.apply(CVec(7)), std::invalid_argument);
}

TEST(Circulant, ZeroMeanEquivalenceForMSequenceFilter) {
  for (int d : {3, 6}) {
    const Sequence m = m_sequence(d);
    const std::size_t n = m.size();
    const auto a = CirculantOperator::from_filter(m);
    const auto at = CirculantOperator::from_filter(perfect_binary_from_m(m));
    CVec x = random_vec(n, 5);
    cplx mean = 0.0;
    for (const auto& v : x) mean += v;
    mean /= double(n);
    for (auto& v : x) v -= mean;
    const CVec ya = a.apply(x), yt = at.apply(x);
    for (std::size_t i = 0; i < n; ++i)
      EXPECT_LT(std::abs(yt[i] - std::sqrt(double(n) / (n + 1)) * ya[i]), 1e-10);
  }
}

TEST(Sampling, RandomIsSortedDistinctAndSeeded) {
  const auto s = SamplingSet::random(100, 30, 7);
  ASSERT_EQ(s.m(), 30u);
  for (std::size_t i = 1; i < s.m(); ++i) EXPECT_LT(s.indices()[i - 1], s.indices()[i]);
  EXPECT_LT(s.indices().back(), 100u);
  EXPECT_EQ(s.indices(), SamplingSet::random(100, 30, 7).indices());
  EXPECT_NE(s.indices(), SamplingSet::random(100, 30, 8).indices());
  EXPECT_EQ(s.mode(), SamplingMode::RandomUniform);
  EXPECT_EQ(s.seed(), 7u);
}

TEST(Sampling, FullDrawIsEverything) {
  const auto s = SamplingSet::random(10, 10, 1);
  for (std::size_t i = 0; i < 10; ++i) EXPECT_EQ(s.indices()[i], i);
}

TEST(Sampling, Deterministic) {
  const auto s = SamplingSet::deterministic(10, {7, 1, 4});
  EXPECT_EQ(s.indices(), (std::vector<std::size_t>{1, 4, 7}));
  EXPECT_EQ(s.mode(), SamplingMode::Deterministic);
  EXPECT_THROW(SamplingSet::deterministic(10, {1, 1}), std::invalid_argument);
  EXPECT_THROW(SamplingSet::deterministic(10, {10}), std::invalid_argument);
  EXPECT_THROW(SamplingSet::random(10, 11, 1), std::invalid_argument);
  EXPECT_THROW(SamplingSet::random(10, 0, 1), std::invalid_argument);
}

TEST(Sampling, Stride) {
  EXPECT_EQ(SamplingSet::stride(10, 4).indices(), (std::vector<std::size_t>{0, 2, 5, 7}));
  EXPECT_EQ(SamplingSet::stride(1024, 64).indices()[1], 16u);
}

TEST(Basis, FastPathsMatchFormulas) {
  for (auto kind : {BasisKind::Identity, BasisKind::InverseFourier, BasisKind::InverseDCT2})
    for (std::size_t n : {1u, 2u, 8u, 15u, 64u}) {
      const Eigen::MatrixXcd psi = oracle_basis(kind, n);
      EXPECT_LT(oracle::max_abs(basis_dense(kind, n) - psi), 1e-12);
      const CVec f = random_vec(n, 3);
      EXPECT_LT(oracle::rel_diff(basis_apply(kind, f), oracle::to_vec(psi * oracle::to_eigen(f))), 1e-12);
      EXPECT_LT(oracle::rel_diff(basis_adjoint(kind, f), oracle::to_vec(psi.adjoint() * oracle::to_eigen(f))), 1e-12);
    }
}

TEST(Basis, DctIsOrthogonal) {
  const Matrix d = basis_dense(BasisKind::InverseDCT2, 32);
  EXPECT_LT(oracle::max_abs(d.adjoint() * d - Matrix::Identity(32, 32)), 1e-12);
  EXPECT_LT(d.imag().cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Basis, Names) {
  EXPECT_EQ(basis_kind_from_string("identity"), BasisKind::Identity);
  EXPECT_EQ(basis_kind_from_string("fourier"), BasisKind::InverseFourier);
  EXPECT_EQ(basis_kind_from_string("dct"), BasisKind::InverseDCT2);
  EXPECT_EQ(to_string(BasisKind::InverseDCT2), "dct");
  EXPECT_THROW(basis_kind_from_string("wavelet"), std::invalid_argument);
}

TEST(Sensing, ForwardAdjointAndColumnsMatchOracle) {
  std::uint64_t seed = 11;
  for (auto kind : {BasisKind::Identity, BasisKind::InverseFourier, BasisKind::InverseDCT2})
    for (std::size_t n : {16u, 31u, 64u}) {
      const auto a = CirculantOperator::from_spectrum(random_phase(n, ++seed));
      const SensingOperator op(a, SamplingSet::random(n, n / 3, seed), kind);
      const Eigen::MatrixXcd t = oracle_theta(a, op.sampling(), kind);
      EXPECT_LT(oracle::max_abs(materialize_dense(op) - t), 1e-12);
      const CVec f = random_vec(n, seed);
      const CVec y = random_vec(op.rows(), seed + 1);
      EXPECT_LT(oracle::rel_diff(op.forward(f), oracle::to_vec(t * oracle::to_eigen(f))), 1e-12);
      EXPECT_LT(oracle::rel_diff(op.adjoint(y), oracle::to_vec(t.adjoint() * oracle::to_eigen(y))), 1e-12);
      for (std::size_t j : {std::size_t{0}, n / 2, n - 1})
        EXPECT_LT(oracle::rel_diff(op.column(j), oracle::to_vec(t.col(j))), 1e-12);
    }
}

TEST(Sensing, AdjointIdentity) {
  const auto a = CirculantOperator::from_spectrum(golay(64));
  const SensingOperator op(a, SamplingSet::random(64, 20, 3), BasisKind::InverseDCT2);
  const CVec f = random_vec(64, 1), y = random_vec(20, 2);
  EXPECT_LT(std::abs(inner(op.forward(f), y) - inner(f, op.adjoint(y))), 1e-12);
}

TEST(Sensing, SizeMismatchThrows) {
  const auto a = CirculantOperator::from_spectrum(fzc(16, 1));
  EXPECT_THROW(SensingOperator(a, SamplingSet::random(17, 4, 1), BasisKind::Identity), std::invalid_argument);
}

TEST(Dense, WrapsMatrix) {
  Matrix m(2, 3);
  m << 1.0, 2.0, 3.0, cplx(0.0, 1.0), 0.0, -1.0;
  const DenseOperator d(m);
  const CVec y = d.forward(CVec{1.0, 1.0, 1.0});
  EXPECT_EQ(y[0], cplx(6.0, 0.0));
  EXPECT_EQ(y[1], cplx(-1.0, 1.0));
  EXPECT_EQ(d.adjoint(CVec{0.0, 1.0})[0], cplx(0.0, -1.0));
  EXPECT_EQ(d.column(2)[1], cplx(-1.0, 0.0));
}

TEST(Dense, GuardRejectsHugeMaterialization) {
  const auto a = CirculantOperator::from_spectrum(fzc(kDenseGuard + 1, 1));
  EXPECT_THROW(materialize_dense(a), std::length_error);
}
