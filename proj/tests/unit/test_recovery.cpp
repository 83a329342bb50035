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

#include "convcs/recovery.hpp"
#include "convcs/rng.hpp"
#include "oracles.hpp"

using namespace convcs;

namespace {

struct Problem {
  SensingOperator op;
  CVec f;
  CVec y;
  std::vector<std::size_t> support;
};

Problem make_problem(std::size_t n, std::size_t m, std::size_t k, std::uint64_t seed, BasisKind basis) {
  Rng rng(seed);
  SensingOperator op(CirculantOperator::from_spectrum(golay(n)), SamplingSet::random(n, m, seed), basis);
  CVec f(n, 0.0);
  std::vector<std::size_t> supp;
  while (supp.size() < k) {
    const std::size_t j = rng.uniform_below(n);
    if (f[j] != cplx(0.0)) continue;
    f[j] = rng.complex_normal() + cplx(0.5 * (rng.coin() ? 1 : -1), 0.0);
    supp.push_back(j);
  }
  std::sort(supp.begin(), supp.end());
  CVec y = op.forward(f);
  return {std::move(op), std::move(f), std::move(y), std::move(supp)};
}

double rel_err(CSpan a, CSpan b) { return oracle::rel_diff(CVec(a.begin(), a.end()), CVec(b.begin(), b.end())); }

}  // namespace

TEST(Omp, RecoversNoiselessSparse) {
  for (std::uint64_t s = 1; s <= 10; ++s) {
    const Problem p = make_problem(128, 48, 4, s, BasisKind::Identity);
    const RecoveryResult r = omp(p.op, p.y, 4);
    EXPECT_LT(rel_err(r.f_hat, p.f), 1e-8) << s;
    EXPECT_EQ(r.support, p.support);
    EXPECT_TRUE(r.converged);
  }
}

TEST(Omp, StopsEarlyOnExactFit) {
  const Problem p = make_problem(64, 32, 2, 4, BasisKind::Identity);
  const RecoveryResult r = omp(p.op, p.y, 6);
  EXPECT_EQ(r.iterations, 2);
  EXPECT_EQ(r.support.size(), 2u);
}

TEST(SubspacePursuit, RecoversNoiselessSparse) {
  for (auto basis : {BasisKind::Identity, BasisKind::InverseFourier, BasisKind::InverseDCT2})
    for (std::uint64_t s = 1; s <= 10; ++s) {
      const Problem p = make_problem(128, 48, 5, s, basis);
      const RecoveryResult r = subspace_pursuit(p.op, p.y, 5);
      EXPECT_LT(rel_err(r.f_hat, p.f), 1e-8) << s;
      EXPECT_EQ(r.support, p.support);
      EXPECT_LE(r.residual_norm, 1e-8 * std::sqrt(norm2(p.y)));
    }
}

TEST(SubspacePursuit, RejectsTooManyAtoms) {
  const Problem p = make_problem(64, 10, 2, 1, BasisKind::Identity);
  EXPECT_THROW(subspace_pursuit(p.op, p.y, 6), std::invalid_argument);
  EXPECT_THROW(subspace_pursuit(p.op, CVec(9), 2), std::invalid_argument);
  EXPECT_THROW(omp(p.op, p.y, 0), std::invalid_argument);
}

TEST(LeastSquares, MatchesNormalEquationsOracle) {
  const Problem p = make_problem(64, 24, 3, 9, BasisKind::InverseFourier);
  const std::vector<std::size_t> supp{1, 5, 9, 30};
  const CVec y = oracle::to_vec(Eigen::VectorXcd::Random(24));
  const CVec x = least_squares_on_support(p.op, y, supp);
  const Matrix t = materialize_dense(p.op);
  Matrix sub(24, 4);
  for (std::size_t i = 0; i < 4; ++i) sub.col(i) = t.col(supp[i]);
  const Eigen::VectorXcd ref = sub.colPivHouseholderQr().solve(oracle::to_eigen(y));
  EXPECT_LT(oracle::rel_diff(x, oracle::to_vec(ref)), 1e-9);
}

TEST(Fista, ObjectiveMatchesFormula) {
  const Problem p = make_problem(32, 16, 2, 3, BasisKind::Identity);
  const CVec f = oracle::to_vec(Eigen::VectorXcd::Random(32));
  const Matrix t = materialize_dense(p.op);
  const double l1 = oracle::to_eigen(f).cwiseAbs().sum();
  const double want = 0.5 * (oracle::to_eigen(p.y) - t * oracle::to_eigen(f)).squaredNorm() + 0.25 * l1;
  EXPECT_NEAR(lasso_objective(p.op, p.y, f, 0.25), want, 1e-10 * want);
}

TEST(Fista, OperatorNormMatchesLargestSingularValue) {
  const Problem p = make_problem(64, 20, 2, 5, BasisKind::Identity);
  const Eigen::JacobiSVD<Matrix> svd(materialize_dense(p.op));
  const double s = svd.singularValues()(0);
  EXPECT_NEAR(operator_norm_sq(p.op, 200, 1e-12), s * s, 1e-6 * s * s);
}

TEST(Fista, ApproximatesSparseSolution) {
  for (std::uint64_t s = 1; s <= 5; ++s) {
    const Problem p = make_problem(128, 48, 4, s, BasisKind::Identity);
    double ymax = 0.0;
    for (const auto& v : p.op.adjoint(p.y)) ymax = std::max(ymax, std::abs(v));
    const RecoveryResult r = fista_lasso(p.op, p.y, 1e-4 * ymax);
    EXPECT_LT(rel_err(r.f_hat, p.f), 1e-2) << s;
    EXPECT_EQ(r.support, p.support);
    // lambda small, so the objective at the solution is below that at the truth.
    EXPECT_LE(lasso_objective(p.op, p.y, r.f_hat, 1e-4 * ymax), lasso_objective(p.op, p.y, p.f, 1e-4 * ymax) * (1 + 1e-9));
  }
}

TEST(Fista, RejectsBadLambda) {
  const Problem p = make_problem(32, 16, 2, 3, BasisKind::Identity);
  EXPECT_THROW(fista_lasso(p.op, p.y, 0.0), std::invalid_argument);
}

TEST(Solve, Dispatch) {
  const Problem p = make_problem(128, 48, 4, 7, BasisKind::Identity);
  double ymax = 0.0;
  for (const auto& v : p.op.adjoint(p.y)) ymax = std::max(ymax, std::abs(v));
  RecoveryProblem rp{&p.op, p.y, 4, 1e-4 * ymax};
  EXPECT_EQ(solve(rp, SolverKind::OMP).support, p.support);
  EXPECT_EQ(solve(rp, SolverKind::SubspacePursuit).support, p.support);
  EXPECT_EQ(solve(rp, SolverKind::FISTA).support, p.support);
  rp.op = nullptr;
  EXPECT_THROW(solve(rp, SolverKind::OMP), std::invalid_argument);
}

TEST(Solve, Names) {
  EXPECT_EQ(solver_kind_from_string("sp"), SolverKind::SubspacePursuit);
  EXPECT_EQ(solver_kind_from_string("omp"), SolverKind::OMP);
  EXPECT_EQ(solver_kind_from_string("fista"), SolverKind::FISTA);
  EXPECT_EQ(to_string(SolverKind::FISTA), "fista");
  EXPECT_THROW(solver_kind_from_string("cosamp"), std::invalid_argument);
}

TEST(Solve, WorksOnDenseOperators) {
  Rng rng(4);
  Matrix m(30, 60);
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = rng.complex_normal() / std::sqrt(30.0);
  const DenseOperator op(m);
  CVec f(60, 0.0);
  f[3] = 1.0;
  f[40] = cplx(0.0, -2.0);
  const CVec y = op.forward(f);
  EXPECT_LT(rel_err(subspace_pursuit(op, y, 2).f_hat, f), 1e-9);
}
