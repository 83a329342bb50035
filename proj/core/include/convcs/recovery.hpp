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

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "convcs/operators.hpp"

namespace convcs {

enum class SolverKind { OMP, SubspacePursuit, FISTA };
std::string_view to_string(SolverKind kind);
SolverKind solver_kind_from_string(std::string_view name);

struct RecoveryResult {
  CVec f_hat;
  std::vector<std::size_t> support;  // ascending
  int iterations = 0;
  double residual_norm = 0.0;        // ||y - Theta f_hat||
  bool converged = false;
};

struct OmpOptions {
  double residual_tol = 1e-6;  // stop once ||r|| <= tol * ||y||
};

struct SubspacePursuitOptions {
  int max_iters = 50;
  double rel_tol = 1e-7;  // stop once the residual drops by at most this fraction
};

struct FistaOptions {
  int max_iters = 2000;
  double rel_tol = 1e-8;          // relative objective change
  int power_iters = 30;
  double power_tol = 1e-6;
  double support_threshold = 1e-4;  // relative to max |f_hat|
};

/// Orthogonal matching pursuit: up to K atoms chosen by max |Theta^* r|
/// (lowest index on ties), least-squares refit after every pick.
RecoveryResult omp(const LinearOperator& op, CSpan y, std::size_t k, const OmpOptions& opt = {});

/// Subspace pursuit: merge the current support with the K strongest
/// correlations outside it, least-squares on the union, prune to K, refit.
/// Requires 2K <= M.
RecoveryResult subspace_pursuit(const LinearOperator& op, CSpan y, std::size_t k,
                                const SubspacePursuitOptions& opt = {});

/// FISTA for min 0.5 ||y - Theta f||^2 + lambda ||f||_1 with complex soft
/// thresholding, step 1/L from power iteration on Theta^* Theta, adaptive
/// restart whenever the objective increases and step halving when the
/// quadratic upper bound fails. The objective sequence is non-increasing.
RecoveryResult fista_lasso(const LinearOperator& op, CSpan y, double lambda,
                           const FistaOptions& opt = {});

/// Largest eigenvalue of Theta^* Theta by power iteration from a fixed start.
double operator_norm_sq(const LinearOperator& op, int iters = 30, double tol = 1e-6);

/// Objective 0.5 ||y - Theta f||^2 + lambda ||f||_1.
double lasso_objective(const LinearOperator& op, CSpan y, CSpan f, double lambda);

/// Solver inputs bundled for dispatch. Exactly one of k / lambda applies
/// depending on the solver.
struct RecoveryProblem {
  const LinearOperator* op = nullptr;
  CVec y;
  std::size_t k = 0;
  double lambda = 0.0;
};

RecoveryResult solve(const RecoveryProblem& p, SolverKind solver);

/// Least squares on the columns in `support`: normal equations with a 1e-12
/// ridge. Returns the coefficients in support order.
CVec least_squares_on_support(const LinearOperator& op, CSpan y,
                              const std::vector<std::size_t>& support);

}  // namespace convcs
